"""Monomials, generator sets, quotient pairs, and their lattice side.

The lcm-semilattice of a generator set G is the set of lcms of non-empty
subsets of G ordered by divisibility.  Its standard weight map divides out,
at each element, the gcd of everything strictly above; multiplying the
weights of the non-upper set recovers the element (inversion).  The
transforms at the bottom of this file (polarize, radical, colon, restrict,
inflate, deform) are the ideal-level moves whose effect on Stanley depth and
projective dimension the rest of the library measures.
"""

import re
from dataclasses import dataclass, field
from functools import reduce
from math import gcd
from typing import Optional

import numpy as np

from .config import DEFAULT, Config
from .errors import (
    EmptyModule,
    InvalidDeformation,
    InvalidInput,
    LimitExceeded,
    NotSquarefree,
)
from .lattice import Semilattice


class Monomial:
    """Exponent vector with divisibility semantics; immutable."""

    __slots__ = ("exps",)

    def __init__(self, exps):
        try:
            exps = tuple(int(e) for e in exps)
        except (TypeError, ValueError):
            raise InvalidInput(f"exponent vector expected, got {exps!r}")
        if any(e < 0 for e in exps):
            raise InvalidInput(f"negative exponent in {exps}")
        object.__setattr__(self, "exps", exps)

    def __setattr__(self, *a):
        raise AttributeError("Monomial is immutable")

    @classmethod
    def one(cls, nvars):
        return cls((0,) * nvars)

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.exps == other.exps

    def __hash__(self):
        return hash(self.exps)

    def __len__(self):
        return len(self.exps)

    def divides(self, other):
        return all(a <= b for a, b in zip(self.exps, other.exps))

    def lcm(self, other):
        return Monomial(tuple(max(a, b) for a, b in zip(self.exps, other.exps)))

    def gcd(self, other):
        return Monomial(tuple(min(a, b) for a, b in zip(self.exps, other.exps)))

    def mul(self, other):
        return Monomial(tuple(a + b for a, b in zip(self.exps, other.exps)))

    def div(self, other):
        if not other.divides(self):
            raise InvalidInput("inexact monomial division")
        return Monomial(tuple(a - b for a, b in zip(self.exps, other.exps)))

    def degree(self):
        return sum(self.exps)

    def support(self):
        return tuple(j for j, e in enumerate(self.exps) if e > 0)

    def is_unit(self):
        return all(e == 0 for e in self.exps)

    def is_squarefree(self):
        return all(e <= 1 for e in self.exps)

    def radical(self):
        return Monomial(tuple(1 if e > 0 else 0 for e in self.exps))

    def sort_key(self):
        return (self.degree(), self.exps)

    def __repr__(self):
        return f"Monomial{self.exps}"


def strictly_divides(m: Monomial, u: Monomial) -> bool:
    """m divides u/x_j for every variable x_j dividing u."""
    return all(
        (e == 0 if uj == 0 else e < uj) for e, uj in zip(m.exps, u.exps)
    )


def render_monomial(m: Monomial, variables) -> str:
    parts = []
    for v, e in zip(variables, m.exps):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts) if parts else "1"


_TOKEN = re.compile(r"^(.*?)(?:\^(\d+))?$")


def parse_monomial(text, variables) -> Monomial:
    text = text.strip()
    exps = [0] * len(variables)
    if text in ("1", ""):
        return Monomial(exps)
    index = {v: j for j, v in enumerate(variables)}
    for tok in text.split("*"):
        m = _TOKEN.match(tok.strip())
        name, power = m.group(1), m.group(2)
        if name not in index:
            raise InvalidInput(f"unknown variable {name!r}")
        exps[index[name]] += int(power) if power else 1
    return Monomial(exps)


class GeneratorSet:
    """An ordered list of monomial generators over a named ambient."""

    def __init__(self, variables, gens):
        self.variables = tuple(str(v) for v in variables)
        if len(set(self.variables)) != len(self.variables):
            raise InvalidInput("duplicate variable names")
        gens = tuple(g if isinstance(g, Monomial) else Monomial(g) for g in gens)
        for g in gens:
            if len(g) != len(self.variables):
                raise InvalidInput("generator arity does not match the ambient")
        self.gens = gens

    @property
    def nvars(self):
        return len(self.variables)

    def is_zero(self):
        return not self.gens

    def contains(self, m: Monomial) -> bool:
        """Ideal membership."""
        return any(g.divides(m) for g in self.gens)

    def minimalize(self) -> "GeneratorSet":
        """Antichain of minimal generators, stable-sorted by (degree, exponents)."""
        ordered = sorted(set(self.gens), key=Monomial.sort_key)
        kept = []
        for g in ordered:
            if not any(h.divides(g) for h in kept):
                kept.append(g)
        return GeneratorSet(self.variables, kept)

    def is_minimal(self) -> bool:
        if len(set(self.gens)) != len(self.gens):
            return False
        return not any(
            a.divides(b) for a in self.gens for b in self.gens if a is not b
        )

    def same_ideal(self, other: "GeneratorSet") -> bool:
        return all(other.contains(g) for g in self.gens) and all(
            self.contains(g) for g in other.gens
        )

    def lcm(self) -> Monomial:
        return reduce(Monomial.lcm, self.gens, Monomial.one(self.nvars))

    def gcd_of_gens(self) -> Monomial:
        if not self.gens:
            raise InvalidInput("gcd of no generators")
        return reduce(Monomial.gcd, self.gens)

    def is_squarefree_raw(self) -> bool:
        return all(g.is_squarefree() for g in self.gens)

    def render(self):
        return [render_monomial(g, self.variables) for g in self.gens]

    def __len__(self):
        return len(self.gens)

    def __repr__(self):
        return f"GeneratorSet({', '.join(self.render()) if self.gens else '0'})"


class QuotientPair:
    """Ideals J inside I given by generator lists over a common ambient."""

    def __init__(self, numerator: GeneratorSet, denominator: GeneratorSet):
        if numerator.variables != denominator.variables:
            raise InvalidInput("quotient pair must share one ambient")
        for g in denominator.gens:
            if not numerator.contains(g):
                raise InvalidInput(
                    f"generator {render_monomial(g, numerator.variables)} of J "
                    "is not inside I"
                )
        self.i = numerator
        self.j = denominator

    @property
    def variables(self):
        return self.i.variables

    def is_proper(self) -> bool:
        """True when I/J is a non-zero module."""
        return not all(self.j.contains(g) for g in self.i.gens)

    def require_proper(self):
        if not self.is_proper():
            raise EmptyModule("the two ideals coincide; the quotient is zero")

    def minimalize(self) -> "QuotientPair":
        return QuotientPair(self.i.minimalize(), self.j.minimalize())

    def __repr__(self):
        return f"QuotientPair(I={self.i!r}, J={self.j!r})"


def ideal_pair(gens: GeneratorSet) -> QuotientPair:
    """The module I itself, as the pair (I, 0)."""
    return QuotientPair(gens, GeneratorSet(gens.variables, []))


def quotient_ring_pair(gens: GeneratorSet) -> QuotientPair:
    """The module S/I, as the pair ((1), I)."""
    unit = GeneratorSet(gens.variables, [Monomial.one(gens.nvars)])
    return QuotientPair(unit, gens)


def union_generators(pair: QuotientPair) -> GeneratorSet:
    """Generators of I then the new ones of J, exact duplicates dropped."""
    gens = list(pair.i.gens)
    seen = set(gens)
    for g in pair.j.gens:
        if g not in seen:
            gens.append(g)
            seen.add(g)
    return GeneratorSet(pair.variables, gens)


# ---------------- the lcm-semilattice ----------------


@dataclass
class LcmLattice:
    lattice: Semilattice
    monomials: tuple
    _index: dict = field(default_factory=dict, repr=False)

    def index_of(self, m: Monomial):
        if not self._index:
            self._index.update({mo.exps: i for i, mo in enumerate(self.monomials)})
        return self._index.get(m.exps)


def lcm_semilattice(gens: GeneratorSet, config: Config = DEFAULT) -> LcmLattice:
    """All lcms of non-empty subsets of the generators, ordered by divisibility."""
    if not gens.gens:
        raise InvalidInput("the lcm-semilattice needs at least one generator")
    base = list(dict.fromkeys(gens.gens))
    seen = {m.exps for m in base}
    frontier = list(base)
    while frontier:
        fresh = []
        for m in frontier:
            for g in base:
                l = m.lcm(g)
                if l.exps not in seen:
                    seen.add(l.exps)
                    if len(seen) > config.element_cap:
                        raise LimitExceeded(
                            f"lcm closure exceeds cap {config.element_cap}"
                        )
                    fresh.append(l)
        frontier = fresh
    monos = sorted((Monomial(e) for e in seen), key=Monomial.sort_key)
    n = len(monos)
    E = np.array([m.exps for m in monos], dtype=np.int64)
    leq = np.zeros((n, n), dtype=bool)
    for i in range(n):
        leq[i] = np.all(E >= E[i], axis=1)
    index = {m.exps: i for i, m in enumerate(monos)}
    join = np.zeros((n, n), dtype=np.int32)
    for i in range(n):
        big = np.maximum(E, E[i])
        for j in range(i, n):
            join[i, j] = join[j, i] = index[tuple(int(x) for x in big[j])]
    labels = [render_monomial(m, gens.variables) for m in monos]
    lat = Semilattice._trusted(labels, leq, join)
    return LcmLattice(lat, tuple(monos))


# ---------------- weights ----------------


@dataclass
class Weighting:
    """Monomial weights on a semilattice plus one weight for the virtual bottom."""

    lattice: Semilattice
    variables: tuple
    bottom: Monomial
    weights: tuple
    monomials: Optional[tuple] = None  # element labels, when they are known

    def degree_at(self, idx):
        return self.weights[idx].degree()


def weight_map(gens: GeneratorSet, config: Config = DEFAULT) -> Weighting:
    """The standard weights of a generator set's lcm-semilattice."""
    lcmlat = lcm_semilattice(gens, config)
    lat, monos = lcmlat.lattice, lcmlat.monomials
    top = lat.top
    weights = []
    for m in range(lat.n):
        if m == top:
            weights.append(Monomial.one(gens.nvars))
            continue
        above = [q for q in range(lat.n) if lat.leq[m, q] and q != m]
        g = reduce(Monomial.gcd, (monos[q] for q in above))
        weights.append(g.div(monos[m]))
    bottom = gens.gcd_of_gens()
    return Weighting(lat, gens.variables, bottom, tuple(weights), monos)


def reconstruct(w: Weighting, idx: int) -> Monomial:
    """Product of the weights of the bottom and of every element not above idx."""
    lat = w.lattice
    out = w.bottom
    for q in range(lat.n):
        if not lat.leq[idx, q]:
            out = out.mul(w.weights[q])
    return out


def squarefree_check(gens: GeneratorSet):
    """(flag, witness): weights all squarefree and pairwise coprime <=> squarefree ideal."""
    w = weight_map(gens)
    names = ["bottom"] + list(w.lattice.labels)
    monos = [w.bottom] + list(w.weights)
    verdict, witness = True, None
    for i, m in enumerate(monos):
        if not m.is_squarefree():
            verdict, witness = False, f"weight at {names[i]} is not squarefree"
            break
    if verdict:
        for i in range(len(monos)):
            for k in range(i + 1, len(monos)):
                if not m_coprime(monos[i], monos[k]):
                    verdict = False
                    witness = f"weights at {names[i]} and {names[k]} share a variable"
                    break
            if not verdict:
                break
    # the weight criterion must agree with plain exponent inspection
    assert verdict == gens.is_squarefree_raw()
    return verdict, witness


def m_coprime(a: Monomial, b: Monomial) -> bool:
    return all(min(x, y) == 0 for x, y in zip(a.exps, b.exps))


# ---------------- transforms ----------------


def _polar_names(variables, dmax):
    names = [f"{v}{t + 1}" for v, d in zip(variables, dmax) for t in range(d)]
    if len(set(names)) != len(names):
        names = [f"{v}_{t + 1}" for v, d in zip(variables, dmax) for t in range(d)]
    assert len(set(names)) == len(names)
    return names


def _polarize_one(m: Monomial, dmax) -> Monomial:
    exps = []
    for e, d in zip(m.exps, dmax):
        exps.extend([1] * e + [0] * (d - e))
    return Monomial(exps)


def polarize(obj):
    """Split exponents into distinct squarefree variables; lattice shape is kept."""
    if isinstance(obj, QuotientPair):
        pair = obj.minimalize()
        pool = list(pair.i.gens) + list(pair.j.gens)
        dmax = [max((g.exps[j] for g in pool), default=0) for j in range(pair.i.nvars)]
        names = _polar_names(pair.variables, dmax)
        return QuotientPair(
            GeneratorSet(names, [_polarize_one(g, dmax) for g in pair.i.gens]),
            GeneratorSet(names, [_polarize_one(g, dmax) for g in pair.j.gens]),
        )
    gens = obj.minimalize()
    dmax = [max((g.exps[j] for g in gens.gens), default=0) for j in range(gens.nvars)]
    names = _polar_names(gens.variables, dmax)
    return GeneratorSet(names, [_polarize_one(g, dmax) for g in gens.gens])


def radical(obj):
    if isinstance(obj, QuotientPair):
        return QuotientPair(radical(obj.i), radical(obj.j))
    return GeneratorSet(obj.variables, [g.radical() for g in obj.gens]).minimalize()


def colon(obj, by: Monomial):
    """(ideal : by); generators lcm(g, by)/by, re-minimalized."""
    if isinstance(obj, QuotientPair):
        return QuotientPair(colon(obj.i, by), colon(obj.j, by))
    if len(by) != obj.nvars:
        raise InvalidInput("colon divisor lives in the wrong ambient")
    return GeneratorSet(
        obj.variables, [g.lcm(by).div(by) for g in obj.gens]
    ).minimalize()


def restrict_variable(obj, var_index: int):
    """Set one variable's exponent to zero everywhere and drop it from the ambient."""
    if isinstance(obj, QuotientPair):
        return QuotientPair(
            restrict_variable(obj.i, var_index), restrict_variable(obj.j, var_index)
        )
    if not 0 <= var_index < obj.nvars:
        raise InvalidInput(f"no variable with index {var_index}")
    names = [v for j, v in enumerate(obj.variables) if j != var_index]
    gens = [
        Monomial(tuple(e for j, e in enumerate(g.exps) if j != var_index))
        for g in obj.gens
    ]
    return GeneratorSet(names, gens).minimalize()


def _fresh_name(variables, base="Y"):
    if base not in variables:
        return base
    t = 2
    while f"{base}{t}" in variables:
        t += 1
    return f"{base}{t}"


def inflate(pair: QuotientPair, m: Monomial, config: Config = DEFAULT) -> QuotientPair:
    """Multiply every generator not dividing m by one fresh variable.

    Requires squarefree generators; m must be an element of the joint
    lcm-semilattice.  Stanley projective dimension is preserved.
    """
    union = union_generators(pair)
    if not union.is_squarefree_raw():
        raise NotSquarefree("inflate is defined for squarefree generators")
    lcmlat = lcm_semilattice(union, config)
    if lcmlat.index_of(m) is None:
        raise InvalidInput("inflate target is not an lcm of generators")
    fresh = _fresh_name(pair.variables)
    names = list(pair.variables) + [fresh]

    def lift(g: Monomial) -> Monomial:
        return Monomial(g.exps + ((0,) if g.divides(m) else (1,)))

    return QuotientPair(
        GeneratorSet(names, [lift(g) for g in pair.i.gens]),
        GeneratorSet(names, [lift(g) for g in pair.j.gens]),
    )


def _checked_shifts(gens: GeneratorSet, shifts):
    """Shifts must keep strict exponent comparisons and fix zero exponents."""
    if len(shifts) != len(gens.gens):
        raise InvalidInput("one shift vector per generator is required")
    eps = []
    for i, row in enumerate(shifts):
        row = tuple(int(e) for e in row)
        if len(row) != gens.nvars:
            raise InvalidInput(f"shift {i} has the wrong arity")
        if any(e < 0 for e in row):
            raise InvalidDeformation(i, i, 0, "negative shift")
        eps.append(row)
    A = [g.exps for g in gens.gens]
    for i in range(len(A)):
        for j in range(gens.nvars):
            if A[i][j] == 0 and eps[i][j] != 0:
                raise InvalidDeformation(i, i, j, "shift moves a zero exponent")
        for k in range(len(A)):
            if i == k:
                continue
            for j in range(gens.nvars):
                if A[i][j] > A[k][j] and A[i][j] + eps[i][j] <= A[k][j] + eps[k][j]:
                    raise InvalidDeformation(
                        i, k, j, "strict exponent comparison not preserved"
                    )
    return eps


def validate_deformation(gens: GeneratorSet, shifts):
    """(True, None) for a valid deformation, (False, witness) otherwise."""
    try:
        _checked_shifts(gens, shifts)
    except InvalidDeformation as exc:
        return False, str(exc)
    return True, None


def deform(gens: GeneratorSet, shifts) -> GeneratorSet:
    eps = _checked_shifts(gens, shifts)
    return GeneratorSet(
        gens.variables,
        [Monomial(tuple(a + e for a, e in zip(g.exps, row)))
         for g, row in zip(gens.gens, eps)],
    )


def deform_pair(pair: QuotientPair, shifts) -> QuotientPair:
    """Deform I and J through one joint shift of their combined generators."""
    union = union_generators(pair)
    eps = _checked_shifts(union, shifts)
    lookup = {g: row for g, row in zip(union.gens, eps)}

    def move(gs: GeneratorSet) -> GeneratorSet:
        return GeneratorSet(
            gs.variables,
            [Monomial(tuple(a + e for a, e in zip(g.exps, lookup[g])))
             for g in gs.gens],
        )

    newi, newj = move(pair.i), move(pair.j)
    for g in newj.gens:
        if not newi.contains(g):
            raise InvalidDeformation(
                0, 0, 0, "deformation does not keep J inside I"
            )
    return QuotientPair(newi, newj)


def is_generic(gens: GeneratorSet) -> bool:
    """No two generators share a positive degree, unless a third strictly divides their lcm."""
    gs = gens.gens
    for i in range(len(gs)):
        for k in range(i + 1, len(gs)):
            tied = any(
                a == b and a > 0 for a, b in zip(gs[i].exps, gs[k].exps)
            )
            if not tied:
                continue
            u = gs[i].lcm(gs[k])
            if not any(
                strictly_divides(gs[t], u)
                for t in range(len(gs))
                if t != i and t != k
            ):
                return False
    return True


# ---------------- serialization ----------------


def gens_to_json(gens: GeneratorSet) -> dict:
    return {
        "variables": list(gens.variables),
        "generators": [list(g.exps) for g in gens.gens],
    }


def gens_from_json(doc) -> GeneratorSet:
    try:
        return GeneratorSet(list(doc["variables"]), list(doc["generators"]))
    except (KeyError, TypeError) as exc:
        raise InvalidInput(f"bad ideal document: {exc}")


def pair_to_json(pair: QuotientPair) -> dict:
    return {"I": gens_to_json(pair.i), "J": gens_to_json(pair.j)}


def pair_from_json(doc) -> QuotientPair:
    try:
        return QuotientPair(gens_from_json(doc["I"]), gens_from_json(doc["J"]))
    except (KeyError, TypeError) as exc:
        raise InvalidInput(f"bad quotient document: {exc}")


def weighting_to_json(w: Weighting) -> dict:
    from .lattice import lattice_to_json

    return {
        "variables": list(w.variables),
        "lattice": lattice_to_json(w.lattice),
        "bottom": list(w.bottom.exps),
        "weights": [list(m.exps) for m in w.weights],
    }


def weighting_from_json(doc, config: Config = DEFAULT) -> Weighting:
    from .lattice import lattice_from_json

    try:
        lat = lattice_from_json(doc["lattice"], config)
        variables = [str(v) for v in doc["variables"]]
        bottom = Monomial(doc["bottom"])
        weights = tuple(Monomial(row) for row in doc["weights"])
    except (KeyError, TypeError) as exc:
        raise InvalidInput(f"bad weighting document: {exc}")
    if len(weights) != lat.n:
        raise InvalidInput("one weight per lattice element is required")
    if any(len(m) != len(variables) for m in list(weights) + [bottom]):
        raise InvalidInput("weight arity does not match the ambient")
    return Weighting(lat, tuple(variables), bottom, weights)
