import random

import pytest

from lcmlat import (
    GeneratorSet,
    InvalidWeighting,
    Monomial,
    NotAntichain,
    Weighting,
    boolean_semilattice,
    build_semilattice,
    canonical_realization,
    canonical_weighting,
    collapse,
    equalize_degrees,
    ideal_pair,
    is_isomorphic,
    lcm_semilattice,
    parse_monomial,
    quotient_ring_pair,
    realize,
    render_monomial,
    single_degree_pair,
    validate_weighting,
    weight_map,
)


def test_validate_weighting_conditions():
    b2 = boolean_semilattice(2)
    good = canonical_weighting(b2)
    ok, _ = validate_weighting(b2, good)
    assert ok

    # (1a): incomparable elements with non-coprime weights
    x = Monomial((1,))
    clash = Weighting(b2, ("x",), Monomial.one(1), (x, x, Monomial.one(1)))
    ok, witness = validate_weighting(b2, clash)
    assert not ok and "coprime" in witness

    # (1b): unit weight at a meet-irreducible
    unit = Weighting(
        b2, ("x",), Monomial.one(1), (Monomial.one(1), x, Monomial.one(1))
    )
    ok, witness = validate_weighting(b2, unit)
    assert not ok

    # top weight must be the unit
    bad_top = Weighting(b2, ("x", "y"), Monomial.one(2),
                        (Monomial((1, 0)), Monomial((0, 1)), Monomial((1, 1))))
    ok, witness = validate_weighting(b2, bad_top)
    assert not ok


def test_realize_b2_canonical():
    b2 = boolean_semilattice(2)
    real = canonical_realization(b2)
    rendered = sorted(real.gens.render())
    # one variable per meet-irreducible (here: both atoms), top = product
    assert len(rendered) == 3
    mins = real.gens.minimalize()
    assert len(mins.gens) == 2
    assert all(m.is_squarefree() for m in real.labeling)


def test_realize_rejects_invalid():
    b2 = boolean_semilattice(2)
    x = Monomial((1,))
    clash = Weighting(b2, ("x",), Monomial.one(1), (x, x, Monomial.one(1)))
    with pytest.raises(InvalidWeighting):
        realize(b2, clash)


def test_realize_chain_with_heavy_bottom():
    # chain a < b, weight x at a, bottom x: gives (x^2, x) family, ideal (x)
    chain = build_semilattice(["a", "b"], [(0, 1)])
    w = Weighting(chain, ("x",), Monomial((1,)), (Monomial((1,)), Monomial.one(1)))
    real = realize(chain, w)
    assert sorted(real.gens.render()) == ["x", "x^2"]


def test_realize_square_pattern():
    # collapsing the (k-1)-atom coatom of B(k) yields the lcm semilattice of
    # (x1^2, ..., x_{k-1}^2, x1...x_{k-1}); its own weight map inverts back
    for k in (3, 4):
        bk = boolean_semilattice(k)
        target_mask = (1 << (k - 1)) - 1
        a = next(x for x in range(bk.n) if bk.atom_sets[x] == target_mask)
        quot, _ = collapse(bk, a)
        assert quot.is_atomistic

        names = tuple(f"x{i+1}" for i in range(k - 1))
        gens = [parse_monomial(f"x{i+1}^2", names) for i in range(k - 1)]
        gens.append(Monomial([1] * (k - 1)))
        pattern = GeneratorSet(names, gens)
        lam = lcm_semilattice(pattern)
        assert is_isomorphic(lam.lattice, quot)

        w = weight_map(pattern)
        real = realize(lam.lattice, w)
        assert sorted(real.gens.minimalize().render()) == sorted(pattern.render())


def test_canonical_realization_roundtrip_on_collapses(rng):
    for _ in range(25):
        k = rng.randint(2, 4)
        lat = boolean_semilattice(k)
        for _ in range(rng.randint(0, 3)):
            mi = [a for a in lat.meet_irreducibles if a not in lat.atoms]
            if not mi:
                break
            lat, _ = collapse(lat, rng.choice(mi))
        real = canonical_realization(lat)
        back = lcm_semilattice(real.gens)
        assert is_isomorphic(back.lattice, lat)


def test_realize_with_random_coprime_weights(rng):
    from lcmlat import random_weighting

    for _ in range(25):
        k = rng.randint(2, 4)
        lat = boolean_semilattice(k)
        for _ in range(rng.randint(0, 2)):
            mi = [a for a in lat.meet_irreducibles if a not in lat.atoms]
            if not mi:
                break
            lat, _ = collapse(lat, rng.choice(mi))
        w = random_weighting(lat, rng)
        real = realize(lat, w)  # the roundtrip assertions run inside
        assert len(real.labeling) == lat.n


def test_equalize_degrees_two_chain_example():
    # L_{x, yz}: degrees 1 and 2; one round lifts x by a fresh variable
    g = GeneratorSet(("x", "y", "z"), [parse_monomial("x", ("x", "y", "z")),
                                       parse_monomial("y*z", ("x", "y", "z"))])
    lam = lcm_semilattice(g)
    w = weight_map(g)
    anti = [lam.index_of(g.gens[0]), lam.index_of(g.gens[1])]
    w2 = equalize_degrees(lam.lattice, anti, start=w)
    real = realize(lam.lattice, w2)
    degs = {real.labeling[a].degree() for a in anti}
    assert len(degs) == 1 and degs.pop() == 2


def test_equalize_rejects_comparable():
    b2 = boolean_semilattice(2)
    with pytest.raises(NotAntichain):
        equalize_degrees(b2, [0, 2])


def test_equalize_on_boolean_atoms():
    b3 = boolean_semilattice(3)
    w = equalize_degrees(b3, list(b3.atoms))
    real = realize(b3, w)
    assert len({real.labeling[a].degree() for a in b3.atoms}) == 1


def test_single_degree_pair(rng):
    from conftest import random_ideal

    for _ in range(10):
        g = random_ideal(rng, max_vars=3, max_gens=4, max_exp=3).minimalize()
        pair = ideal_pair(g)
        out = single_degree_pair(pair)
        mins = out.i.minimalize()
        assert len({m.degree() for m in mins.gens}) == 1
        # lattice shape survives
        assert is_isomorphic(
            lcm_semilattice(mins).lattice, lcm_semilattice(g).lattice
        )


def test_single_degree_quotient_keeps_containment():
    g = GeneratorSet(("x", "y"), [parse_monomial("x", ("x", "y")),
                                  parse_monomial("y", ("x", "y"))])
    pair = quotient_ring_pair(g)
    out = single_degree_pair(pair)
    for m in out.j.gens:
        assert out.i.contains(m)
