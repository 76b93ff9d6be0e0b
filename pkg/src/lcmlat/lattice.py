"""Finite join-semilattices and the surgery used on them.

A Semilattice stores the full order relation as a boolean matrix plus a join
table.  There is always a unique top; a bottom is NOT assumed (the virtual
bottom that some formulas need is handled by the callers, it is never stored
as an element).  Elements are integer indices; labels are cosmetic.

Surgery: pseudo-inverses of surjective join-preserving maps, collapse of a
meet-irreducible element onto its unique cover, and factoring an arbitrary
surjection into such collapses.
"""

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np

from .config import DEFAULT, Config
from .errors import (
    CyclicRelation,
    InvalidInput,
    LimitExceeded,
    NotASemilattice,
    NotAtomistic,
    NotJoinPreserving,
    NotMeetIrreducible,
    NotSurjective,
)


def _bool_matmul(a, b):
    return (a.astype(np.uint8) @ b.astype(np.uint8)) > 0


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _closure(leq):
    """Reflexive-transitive closure of a boolean relation, in place."""
    n = leq.shape[0]
    np.fill_diagonal(leq, True)
    while True:
        nxt = leq | _bool_matmul(leq, leq)
        if np.array_equal(nxt, leq):
            return leq
        leq = nxt


def _least_upper_bounds(upper, popcount):
    """Join table from upper-set bitmasks; raises if some pair has no lub."""
    n = len(upper)
    join = np.zeros((n, n), dtype=np.int32)
    for a in range(n):
        join[a, a] = a
        ua = upper[a]
        for b in range(a + 1, n):
            common = ua & upper[b]
            if common == 0:
                raise NotASemilattice(a, b)
            best, best_pop = -1, -1
            for j in _bits(common):
                if popcount[j] > best_pop:
                    best, best_pop = j, popcount[j]
            # the least member of `common` has the strictly largest upper set
            if common & ~upper[best]:
                raise NotASemilattice(a, b)
            join[a, b] = join[b, a] = best
    return join


class Semilattice:
    """Finite join-semilattice on elements 0..n-1 with a unique top."""

    def __init__(self, labels, leq, join, _validated=False):
        if not _validated:
            raise InvalidInput("use the from_* constructors")
        self.n = len(labels)
        self.labels = tuple(str(x) for x in labels)
        leq = np.asarray(leq, dtype=bool)
        leq.flags.writeable = False
        self.leq = leq
        join = np.asarray(join, dtype=np.int32)
        join.flags.writeable = False
        self.join = join

    # ---------------- constructors ----------------

    @classmethod
    def from_relations(cls, labels, pairs, config: Config = DEFAULT):
        """Build from (lower, upper) pairs; closure is taken, joins verified."""
        n = len(labels)
        if n == 0:
            raise InvalidInput("a semilattice needs at least one element")
        if n > config.element_cap:
            raise LimitExceeded(f"{n} elements exceeds cap {config.element_cap}")
        leq = np.zeros((n, n), dtype=bool)
        for lo, hi in pairs:
            if not (0 <= lo < n and 0 <= hi < n):
                raise InvalidInput(f"relation ({lo},{hi}) out of range")
            leq[lo, hi] = True
        leq = _closure(leq)
        cyc = leq & leq.T & ~np.eye(n, dtype=bool)
        if cyc.any():
            a, b = map(int, np.argwhere(cyc)[0])
            raise CyclicRelation(a, b)
        return cls.from_leq(labels, leq, config)

    @classmethod
    def from_leq(cls, labels, leq, config: Config = DEFAULT):
        """Build from a (already transitively closed) order matrix."""
        n = len(labels)
        if n > config.element_cap:
            raise LimitExceeded(f"{n} elements exceeds cap {config.element_cap}")
        leq = np.asarray(leq, dtype=bool)
        upper = [_row_mask(leq[i]) for i in range(n)]
        pop = [m.bit_count() for m in upper]
        join = _least_upper_bounds(upper, pop)
        return cls(labels, leq, join, _validated=True)

    @classmethod
    def from_join_table(cls, labels, join, config: Config = DEFAULT):
        """Build from a join table; the table is checked against the order it induces."""
        n = len(labels)
        join = np.asarray(join, dtype=np.int32)
        if join.shape != (n, n):
            raise InvalidInput("join table shape mismatch")
        if not np.array_equal(join, join.T):
            raise NotASemilattice(*map(int, np.argwhere(join != join.T)[0]))
        if any(join[i, i] != i for i in range(n)):
            raise InvalidInput("join table is not idempotent")
        leq = np.zeros((n, n), dtype=bool)
        for a in range(n):
            for b in range(n):
                leq[a, b] = join[a, b] == b
        if not np.array_equal(leq, _closure(leq.copy())):
            raise InvalidInput("join table induces a non-transitive order")
        built = cls.from_leq(labels, leq, config)
        if not np.array_equal(built.join, join):
            bad = np.argwhere(built.join != join)[0]
            raise NotASemilattice(int(bad[0]), int(bad[1]))
        return built

    @classmethod
    def _trusted(cls, labels, leq, join):
        """For constructions whose correctness is a theorem; spot-checked in debug."""
        lat = cls(labels, leq, join, _validated=True)
        assert lat.n > 64 or lat._self_check()
        return lat

    def _self_check(self):
        upper = self.upper_masks
        pop = [m.bit_count() for m in upper]
        return np.array_equal(self.join, _least_upper_bounds(upper, pop))

    # ---------------- derived structure ----------------

    @cached_property
    def upper_masks(self):
        return tuple(_row_mask(self.leq[i]) for i in range(self.n))

    @cached_property
    def lower_masks(self):
        t = self.leq.T
        return tuple(_row_mask(t[i]) for i in range(self.n))

    @cached_property
    def top(self):
        tops = [i for i in range(self.n) if self.upper_masks[i] == 1 << i]
        assert len(tops) == 1
        return tops[0]

    @cached_property
    def cover_matrix(self):
        lt = self.leq & ~np.eye(self.n, dtype=bool)
        return lt & ~_bool_matmul(lt, lt)

    @cached_property
    def covers(self):
        return tuple((int(a), int(b)) for a, b in np.argwhere(self.cover_matrix))

    @cached_property
    def atoms(self):
        """Minimal elements, ascending index."""
        return tuple(i for i in range(self.n) if self.lower_masks[i] == 1 << i)

    @cached_property
    def upper_covers(self):
        out = [[] for _ in range(self.n)]
        for a, b in self.covers:
            out[a].append(b)
        return tuple(tuple(x) for x in out)

    @cached_property
    def lower_covers(self):
        out = [[] for _ in range(self.n)]
        for a, b in self.covers:
            out[b].append(a)
        return tuple(tuple(x) for x in out)

    @cached_property
    def meet_irreducibles(self):
        """Elements covered by exactly one element."""
        return tuple(i for i in range(self.n) if len(self.upper_covers[i]) == 1)

    @cached_property
    def join_irreducibles(self):
        # an element with two lower covers is their join, so irreducible <=> at most one
        return tuple(i for i in range(self.n) if len(self.lower_covers[i]) <= 1)

    @cached_property
    def atom_sets(self):
        """Per element, bitmask over atom positions of the atoms below it."""
        out = []
        for x in range(self.n):
            m = 0
            for t, a in enumerate(self.atoms):
                if self.leq[a, x]:
                    m |= 1 << t
            out.append(m)
        return tuple(out)

    @cached_property
    def is_atomistic(self):
        for x in range(self.n):
            below = [a for a in self.atoms if self.leq[a, x]]
            if self.join_of(below) != x:
                return False
        return True

    @cached_property
    def heights(self):
        h = [0] * self.n
        for x in sorted(range(self.n), key=lambda i: self.lower_masks[i].bit_count()):
            lc = self.lower_covers[x]
            h[x] = 1 + max((h[c] for c in lc), default=-1)
        return tuple(h)

    def join_of(self, ids):
        ids = list(ids)
        if not ids:
            raise InvalidInput("join of an empty set is undefined here")
        acc = ids[0]
        for i in ids[1:]:
            acc = int(self.join[acc, i])
        return acc

    def __repr__(self):
        return f"Semilattice(n={self.n})"


def _row_mask(row):
    m = 0
    for j in np.nonzero(row)[0]:
        m |= 1 << int(j)
    return m


def build_semilattice(labels, pairs, config: Config = DEFAULT):
    return Semilattice.from_relations(labels, pairs, config)


def boolean_semilattice(k, config: Config = DEFAULT):
    """All non-empty subsets of {1..k} under union; element i <-> bitmask i+1."""
    if k < 1:
        raise InvalidInput("need at least one atom")
    n = (1 << k) - 1
    if n > config.element_cap:
        raise LimitExceeded(f"2^{k}-1 elements exceeds cap {config.element_cap}")
    labels = ["{" + ",".join(str(t + 1) for t in _bits(m + 1)) + "}" for m in range(n)]
    leq = np.zeros((n, n), dtype=bool)
    join = np.zeros((n, n), dtype=np.int32)
    for a in range(n):
        for b in range(n):
            leq[a, b] = (a + 1) | (b + 1) == b + 1
            join[a, b] = ((a + 1) | (b + 1)) - 1
    return Semilattice._trusted(labels, leq, join)


# ---------------- reports ----------------


@dataclass(frozen=True)
class StructureReport:
    atoms: tuple
    meet_irreducibles: tuple
    meet_irreducible_covers: tuple  # (element, its unique cover) pairs
    join_irreducibles: tuple
    is_atomistic: bool
    covers: tuple


def structure_report(lat: Semilattice) -> StructureReport:
    mi = lat.meet_irreducibles
    return StructureReport(
        atoms=lat.atoms,
        meet_irreducibles=mi,
        meet_irreducible_covers=tuple((m, lat.upper_covers[m][0]) for m in mi),
        join_irreducibles=lat.join_irreducibles,
        is_atomistic=lat.is_atomistic,
        covers=lat.covers,
    )


# ---------------- maps ----------------


class JoinMap:
    """A map between semilattices with phi(a v b) = phi(a) v phi(b), checked."""

    def __init__(self, source: Semilattice, target: Semilattice, image):
        self.source, self.target = source, target
        image = tuple(int(x) for x in image)
        if len(image) != source.n:
            raise InvalidInput("image length must match source size")
        if any(not 0 <= x < target.n for x in image):
            raise InvalidInput("image index out of range")
        self.image = image
        arr = np.asarray(image, dtype=np.int32)
        lhs = arr[source.join]
        rhs = target.join[arr[:, None], arr[None, :]]
        if not np.array_equal(lhs, rhs):
            a, b = map(int, np.argwhere(lhs != rhs)[0])
            raise NotJoinPreserving(a, b)

    @classmethod
    def identity(cls, lat):
        return cls(lat, lat, range(lat.n))

    @property
    def is_surjective(self):
        return len(set(self.image)) == self.target.n

    @property
    def is_injective(self):
        return len(set(self.image)) == self.source.n

    @property
    def is_bijective(self):
        return self.is_surjective and self.is_injective

    def __call__(self, x):
        return self.image[x]

    def after(self, earlier: "JoinMap") -> "JoinMap":
        """self o earlier."""
        if earlier.target is not self.source and earlier.target.n != self.source.n:
            raise InvalidInput("maps do not compose")
        return JoinMap(earlier.source, self.target,
                       [self.image[earlier.image[x]] for x in range(earlier.source.n)])

    def __repr__(self):
        return f"JoinMap({self.source.n}->{self.target.n})"


@dataclass(frozen=True)
class MonotoneMap:
    source: Semilattice
    target: Semilattice
    image: tuple

    def __call__(self, x):
        return self.image[x]


def free_cover_map(lat: Semilattice, config: Config = DEFAULT) -> JoinMap:
    """The canonical surjection from the boolean semilattice on lat's atoms."""
    if not lat.is_atomistic:
        raise NotAtomistic("free cover exists only for atomistic semilattices")
    atoms = lat.atoms
    cube = boolean_semilattice(len(atoms), config)
    image = [lat.join_of([atoms[t] for t in _bits(m + 1)]) for m in range(cube.n)]
    phi = JoinMap(cube, lat, image)
    assert phi.is_surjective
    return phi


def pseudo_inverse(phi: JoinMap) -> MonotoneMap:
    """Largest-preimage section of a surjective join-preserving map.

    The result psi satisfies phi(psi(b)) = b, is monotone, and
    phi(a) <= b  <=>  a <= psi(b).
    """
    if not phi.is_surjective:
        raise NotSurjective("pseudo-inverse needs a surjective map")
    src, tgt = phi.source, phi.target
    image = []
    for t in range(tgt.n):
        pre = [s for s in range(src.n) if phi.image[s] == t]
        image.append(src.join_of(pre))
    psi = tuple(image)
    assert all(phi.image[psi[t]] == t for t in range(tgt.n))
    assert all(
        src.leq[psi[t], psi[u]]
        for t in range(tgt.n)
        for u in range(tgt.n)
        if tgt.leq[t, u]
    )
    assert all(
        bool(tgt.leq[phi.image[s], t]) == bool(src.leq[s, psi[t]])
        for s in range(src.n)
        for t in range(tgt.n)
    )
    return MonotoneMap(tgt, src, psi)


def collapse(lat: Semilattice, a: int, config: Config = DEFAULT):
    """Identify meet-irreducible a with its unique cover; returns (quotient, projection)."""
    if not 0 <= a < lat.n:
        raise InvalidInput(f"element {a} out of range")
    if len(lat.upper_covers[a]) != 1:
        raise NotMeetIrreducible(a)
    ap = lat.upper_covers[a][0]
    keep = [x for x in range(lat.n) if x != a]
    new_index = {x: i for i, x in enumerate(keep)}

    def rep(x):
        return ap if x == a else x

    m = len(keep)
    table = np.zeros((m, m), dtype=np.int32)
    for i, x in enumerate(keep):
        for j, y in enumerate(keep):
            table[i, j] = new_index[rep(int(lat.join[x, y]))]
    quot = Semilattice.from_join_table([lat.labels[x] for x in keep], table, config)
    pi = JoinMap(lat, quot, [new_index[rep(x)] for x in range(lat.n)])
    return quot, pi


@dataclass(frozen=True)
class FactorStep:
    """One collapse through which a non-injective surjection factors."""

    element: int
    projection: JoinMap
    residual: JoinMap


def factor_map(phi: JoinMap) -> Optional[FactorStep]:
    """Factor a join-preserving map through one collapse, or None if injective."""
    if phi.is_injective:
        return None
    src = phi.source
    chosen = -1
    for a in src.meet_irreducibles:
        ap = src.upper_covers[a][0]
        if phi.image[a] == phi.image[ap]:
            chosen = a
            break
    assert chosen >= 0, "a non-injective join map must glue some cover pair"
    quot, pi = collapse(src, chosen)
    residual_image = [0] * quot.n
    for x in range(src.n):
        residual_image[pi.image[x]] = phi.image[x]
    residual = JoinMap(quot, phi.target, residual_image)
    assert all(residual.image[pi.image[x]] == phi.image[x] for x in range(src.n))
    return FactorStep(chosen, pi, residual)


def factor_chain(phi: JoinMap):
    """Iterate factor_map to a bijective residual; returns (steps, bijection)."""
    steps = []
    cur = phi
    while True:
        st = factor_map(cur)
        if st is None:
            return steps, cur
        steps.append(st)
        cur = st.residual


# ---------------- canonical forms ----------------


def canonical_form(lat: Semilattice, config: Config = DEFAULT) -> bytes:
    """Isomorphism-invariant byte string; equal strings iff isomorphic lattices."""
    k = len(lat.atoms)
    if lat.is_atomistic and k <= config.atom_perm_cap:
        return _canon_atomistic(lat, k)
    return _canon_general(lat, config)


def _canon_atomistic(lat, k):
    family = lat.atom_sets
    best = None
    for perm in itertools.permutations(range(k)):
        remap = [0] * (1 << k)
        bit = [1 << perm[t] for t in range(k)]
        for m in range(1, 1 << k):
            low = m & -m
            remap[m] = remap[m ^ low] | bit[low.bit_length() - 1]
        cand = tuple(sorted(remap[m] for m in family))
        if best is None or cand < best:
            best = cand
    body = ",".join(format(m, "x") for m in best)
    return f"A{k};{body}".encode()


def _refined_colors(lat):
    colors = [
        (lat.lower_masks[x].bit_count(), lat.upper_masks[x].bit_count())
        for x in range(lat.n)
    ]
    while True:
        nxt = [
            (
                colors[x],
                tuple(sorted(colors[c] for c in lat.lower_covers[x])),
                tuple(sorted(colors[c] for c in lat.upper_covers[x])),
            )
            for x in range(lat.n)
        ]
        if _partition_of(nxt) == _partition_of(colors):
            return colors
        colors = nxt


def _partition_of(colors):
    groups = {}
    for i, c in enumerate(colors):
        groups.setdefault(c, []).append(i)
    return sorted(map(tuple, groups.values()))


def _canon_general(lat, config):
    colors = _refined_colors(lat)
    groups = {}
    for i, c in enumerate(colors):
        groups.setdefault(c, []).append(i)
    classes = [groups[c] for c in sorted(groups)]
    total = 1
    for cl in classes:
        for t in range(2, len(cl) + 1):
            total *= t
        if total > config.canon_perm_cap:
            raise LimitExceeded(
                f"canonization needs more than {config.canon_perm_cap} permutations"
            )
    best = None
    for parts in itertools.product(*[itertools.permutations(cl) for cl in classes]):
        order = [x for part in parts for x in part]
        pos = {x: i for i, x in enumerate(order)}
        bits = 0
        at = 0
        for x in order:
            for y in order:
                if lat.leq[x, y]:
                    bits |= 1 << at
                at += 1
        if best is None or bits < best:
            best = bits
    return f"P{lat.n};{format(best, 'x')}".encode()


def is_isomorphic(a: Semilattice, b: Semilattice, config: Config = DEFAULT) -> bool:
    if a.n != b.n or len(a.atoms) != len(b.atoms):
        return False
    if a.is_atomistic != b.is_atomistic:
        return False
    if sorted(a.heights) != sorted(b.heights):
        return False
    return canonical_form(a, config) == canonical_form(b, config)


# ---------------- serialization ----------------


def lattice_to_json(lat: Semilattice) -> dict:
    return {"elements": list(lat.labels), "covers": [list(c) for c in lat.covers]}


def lattice_from_json(doc, config: Config = DEFAULT) -> Semilattice:
    try:
        labels = list(doc["elements"])
        covers = [(int(a), int(b)) for a, b in doc["covers"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"bad lattice document: {exc}")
    return build_semilattice(labels, covers, config)


def lattice_to_dot(lat: Semilattice) -> str:
    lines = ["digraph semilattice {", "  rankdir=BT;", "  node [shape=box];"]
    for i, lab in enumerate(lat.labels):
        esc = lab.replace('"', '\\"')
        lines.append(f'  n{i} [label="{esc}"];')
    for a, b in lat.covers:
        lines.append(f"  n{a} -> n{b};")
    byh = {}
    for i, h in enumerate(lat.heights):
        byh.setdefault(h, []).append(i)
    for h in sorted(byh):
        row = " ".join(f"n{i};" for i in byh[h])
        lines.append(f"  {{ rank=same; {row} }}")
    lines.append("}")
    return "\n".join(lines) + "\n"
