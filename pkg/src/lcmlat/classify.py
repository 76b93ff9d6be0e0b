"""Census of atomistic join-semilattices on a fixed atom count.

Every atomistic semilattice with k atoms is a quotient of the boolean
semilattice on k subsets by a chain of meet-irreducible collapses, and
collapsing above the atoms keeps atomisticity, so breadth-first collapse
closure from the boolean semilattice visits every isomorphism class.
Duplicates are cut by canonical form.  Each class is realized canonically as
a squarefree monomial ideal and measured: projective dimension and Stanley
projective dimension of both the ideal and its quotient ring.
"""

import random
from dataclasses import dataclass

from .config import DEFAULT, Config
from .errors import LimitExceeded, NotAtomistic
from .lattice import Semilattice, boolean_semilattice, canonical_form, collapse
from .monomials import GeneratorSet, Monomial, Weighting
from .realize import canonical_realization, realize
from .resolution import taylor_betti
from .sdepth import sdepth_solve


def enumerate_atomistic(k: int, config: Config = DEFAULT):
    """Yield (canonical form, representative) for every class with k atoms."""
    if k < 1 or k > config.atom_cap:
        raise LimitExceeded(f"atom count {k} outside 1..{config.atom_cap}")
    if k >= 5 and not config.long_run:
        raise LimitExceeded("a census this large must be requested explicitly")
    root = boolean_semilattice(k, config)
    key = canonical_form(root, config)
    seen = {key}
    frontier = [root]
    yield key, root
    while frontier:
        nxt = []
        for lat in frontier:
            atoms = set(lat.atoms)
            for a in lat.meet_irreducibles:
                if a in atoms:
                    continue  # collapsing an atom would break atomisticity
                quot, _ = collapse(lat, a, config)
                assert quot.is_atomistic and len(quot.atoms) == k
                qkey = canonical_form(quot, config)
                if qkey not in seen:
                    seen.add(qkey)
                    nxt.append(quot)
                    yield qkey, quot
        frontier = nxt


@dataclass(frozen=True)
class LatticeInvariants:
    pdim_ideal: int
    pdim_quotient: int
    spdim_ideal: int
    spdim_quotient: int
    nvars: int
    field: str

    def to_json(self):
        return {
            "pdim_ideal": self.pdim_ideal,
            "pdim_quotient": self.pdim_quotient,
            "spdim_ideal": self.spdim_ideal,
            "spdim_quotient": self.spdim_quotient,
            "nvars": self.nvars,
            "field": self.field,
        }


def _invariants_of_gens(gens: GeneratorSet, config: Config):
    from .monomials import ideal_pair, quotient_ring_pair

    slim = gens.minimalize()
    if len(slim.gens) == 1 and slim.gens[0].degree() == 0:
        # the one-element lattice realizes as the unit ideal, whose lattice
        # coincides with a principal ideal's; measure the principal avatar
        slim = GeneratorSet(("x",), [Monomial((1,))])
    bi = taylor_betti(ideal_pair(slim), config)
    bq = taylor_betti(quotient_ring_pair(slim), config)
    assert bq.pdim == bi.pdim + 1, "quotient ring must sit one step above its ideal"
    si = sdepth_solve(ideal_pair(slim), config)
    sq = sdepth_solve(quotient_ring_pair(slim), config)
    return LatticeInvariants(
        bi.pdim, bq.pdim, si.spdim, sq.spdim, slim.nvars, bq.field
    )


def random_weighting(lat: Semilattice, rng: random.Random) -> Weighting:
    """A valid weighting with one private variable per element, random degrees."""
    mi = set(lat.meet_irreducibles)
    variables = tuple(f"r{x}" for x in range(lat.n))
    weights = []
    for x in range(lat.n):
        e = [0] * lat.n
        if x == lat.top:
            pass
        elif x in mi:
            e[x] = rng.randint(1, 2)
        else:
            e[x] = rng.randint(0, 2)
        weights.append(Monomial(e))
    return Weighting(lat, variables, Monomial.one(lat.n), tuple(weights))


def lattice_invariants(lat: Semilattice, config: Config = DEFAULT,
                       recheck=False, rng=None) -> LatticeInvariants:
    """Invariants of the canonical realization of an atomistic semilattice.

    With recheck=True the whole computation is repeated on an independent
    randomized realization and must agree.
    """
    if not lat.is_atomistic:
        raise NotAtomistic("invariants are defined through atomistic realizations")
    real = canonical_realization(lat, config)
    inv = _invariants_of_gens(real.gens, config)
    if recheck:
        rng = rng or random.Random(0)
        second = realize(lat, random_weighting(lat, rng), config)
        other = _invariants_of_gens(second.gens, config)
        assert (
            inv.pdim_ideal == other.pdim_ideal
            and inv.pdim_quotient == other.pdim_quotient
            and inv.spdim_ideal == other.spdim_ideal
            and inv.spdim_quotient == other.spdim_quotient
        ), "invariants must not depend on the realization"
    return inv


@dataclass(frozen=True)
class ConjectureReport:
    invariants: LatticeInvariants
    ideal_bound: bool  # spdim I <= pdim I
    quotient_bound: bool  # spdim S/I <= pdim S/I
    gap_bound: bool  # spdim I <= spdim S/I - 1

    @property
    def holds(self):
        return self.ideal_bound and self.quotient_bound and self.gap_bound


def check_conjectures(lat: Semilattice, config: Config = DEFAULT) -> ConjectureReport:
    inv = lattice_invariants(lat, config)
    return ConjectureReport(
        inv,
        inv.spdim_ideal <= inv.pdim_ideal,
        inv.spdim_quotient <= inv.pdim_quotient,
        inv.spdim_ideal <= inv.spdim_quotient - 1,
    )


def census(k: int, config: Config = DEFAULT, check=True):
    """Yield one record per isomorphism class; conjecture checks are included by default."""
    for key, lat in enumerate_atomistic(k, config):
        record = {
            "atoms": k,
            "elements": lat.n,
            "meet_irreducibles": len(lat.meet_irreducibles),
            "canonical": key.decode(),
        }
        if check:
            rep = check_conjectures(lat, config)
            record["invariants"] = rep.invariants.to_json()
            record["conjectures"] = [
                rep.ideal_bound, rep.quotient_bound, rep.gap_bound
            ]
            record["counterexample"] = not rep.holds
        yield record, lat
