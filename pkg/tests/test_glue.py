"""Fibre pairs over the circle: membership, twists, embeddings, bundles."""

import random

import numpy as np
import pytest

from qglue import (
    DimensionMismatch,
    FibrePair,
    LaurentPoly,
    ParamSet,
    S,
    SymbolMismatch,
    chi,
    disc_symbol,
    disc_presentation,
    en_numeric,
    evaluate_raw,
    extract_degree,
    fp_matmul,
    identity,
    iota,
    iota_kron_assignment,
    kron_interior,
    podles_generators,
    polar_part,
    psi_inverse,
    psi_iso,
    s2_leg_assignment,
    s2_leg_symbol,
    s3_leg_assignment,
    s3_leg_symbol,
    shift,
    sphere2_presentation,
    sphere3_presentation,
    trusted_diff_norm,
    unit_pair,
    zero_pair,
)

PARAMS = ParamSet(d=24)


# -- membership ---------------------------------------------------------------


def test_membership_accepts_matching_symbols():
    one = identity(8)
    sym = LaurentPoly.exact({0: 1, 2: 3})
    fp = FibrePair(one, one, sym, sym, 0)
    assert fp.twist == 0 and fp.d == 8


def test_membership_names_first_failing_power():
    one = identity(8)
    sym0 = LaurentPoly.exact({0: 1, 2: 1})
    sym1 = LaurentPoly.exact({0: 1})
    with pytest.raises(SymbolMismatch, match=r"U\^2"):
        FibrePair(one, one, sym0, sym1, 0)
    with pytest.raises(SymbolMismatch, match=r"twist-1"):
        FibrePair(one, one, sym1, sym1, 1)
    # the twisted membership wants sym1 = U^twist sym0
    fp = FibrePair(one, one, sym1, LaurentPoly.exact({1: 1}), 1)
    assert fp.twist == 1


def test_membership_rejects_numeric_symbols():
    one = identity(8)
    with pytest.raises(SymbolMismatch):
        FibrePair(one, one, LaurentPoly.numeric({0: 1.0}), LaurentPoly.numeric({0: 1.0}))
    with pytest.raises(DimensionMismatch):
        FibrePair(identity(8), identity(9), 1, 1)


def test_twist_join_rules():
    z = zero_pair(8, 3)
    u = unit_pair(8)
    assert (z + u).twist == 0
    assert (u + z).twist == 0
    twisted = psi_inverse(unit_pair(8), 1)
    with pytest.raises(SymbolMismatch):
        twisted + u
    assert (twisted + zero_pair(8, 1)).twist == 1


def test_scale_rules():
    u = unit_pair(8)
    doubled = 2 * u
    assert np.array_equal(doubled.t0.mat, 2.0 * np.eye(8))
    assert doubled.sym0 == LaurentPoly.exact({0: 2})
    with pytest.raises(SymbolMismatch):
        u.scale(0.5)
    from fractions import Fraction

    half = u.scale(0.5, Fraction(1, 2))
    assert half.sym0 == LaurentPoly.exact({0: Fraction(1, 2)})
    assert zero_pair(8).scale(0.5).symbols_zero()


def test_star_negates_twist():
    p = psi_inverse(unit_pair(8), 2)
    q = p.star()
    assert q.twist == -2
    assert q.sym1 == LaurentPoly.exact({-2: 1})
    assert np.array_equal(q.t1.mat, p.t1.mat.conj().T)


def test_matmul_adds_twists():
    p = psi_inverse(unit_pair(12), 1)
    prod = p @ p
    assert prod.twist == 2
    assert prod.sym1 == LaurentPoly.exact({2: 1})


# -- chi and the twist normalization -------------------------------------------


def test_chi_projection_shapes():
    fp = chi(3, 16)
    assert np.array_equal(fp.t0.mat.real, np.diag([0.0] * 3 + [1.0] * 13))
    assert np.array_equal(fp.t1.mat.real, np.eye(16))
    neg = chi(-2, 16)
    assert np.array_equal(neg.t0.mat.real, np.eye(16))
    assert np.array_equal(neg.t1.mat.real, np.diag([0.0] * 2 + [1.0] * 14))
    assert chi(0, 8).twist == 0
    with pytest.raises(DimensionMismatch):
        chi(8, 8)


@pytest.mark.parametrize("N", [2, -3])
def test_psi_round_trip_on_trusted_block(N):
    p = psi_inverse(unit_pair(16), N)
    assert p.twist == N
    rt = psi_inverse(psi_iso(p), N)
    assert rt.twist == N
    assert trusted_diff_norm(rt.t0, p.t0) == 0.0
    assert trusted_diff_norm(rt.t1, p.t1) == 0.0
    assert rt.sym0 == p.sym0 and rt.sym1 == p.sym1


@pytest.mark.parametrize("N", [1, 3, -2])
def test_psi_iso_lands_on_opposite_chi(N):
    p = psi_inverse(unit_pair(16), N)
    image = psi_iso(p)
    target = chi(-N, 16)
    assert image.twist == 0
    assert np.array_equal(image.t0.mat, target.t0.mat)
    assert np.array_equal(image.t1.mat, target.t1.mat)
    assert image.sym0 == target.sym0 and image.sym1 == target.sym1


def test_psi_inverse_needs_twist_zero():
    p = psi_inverse(unit_pair(8), 1)
    with pytest.raises(SymbolMismatch):
        psi_inverse(p, 1)
    assert psi_iso(unit_pair(8)) is not None  # twist 0 passes through
    assert psi_inverse(unit_pair(8), 0).twist == 0


def test_fp_matmul_shape_check():
    u = unit_pair(8)
    with pytest.raises(DimensionMismatch):
        fp_matmul([[u, u]], [[u, u]])
    out = fp_matmul([[u, u]], [[u], [u]])
    assert np.array_equal(out[0][0].t0.mat.real, 2.0 * np.eye(8))


# -- symbol maps ----------------------------------------------------------------


def test_disc_symbol_counts_winding():
    pres = disc_presentation("q")
    z = pres.gen("z")
    x = z * z * z.star()
    sym = disc_symbol(x)
    assert set(sym.terms) == {1}
    assert disc_symbol(pres.one()) == LaurentPoly.exact({0: 1})


def test_s3_leg_symbols_split_the_letters():
    pres = sphere3_presentation()
    a, bstar = pres.gen("a"), pres.gen("b*")
    x = a * bstar
    assert set(s3_leg_symbol(x, 0).terms) == {1}
    assert set(s3_leg_symbol(x, 1).terms) == {-1}
    # the disc defects have symbol zero on their own leg
    astar = pres.gen("a*")
    defect = pres.one() - a * astar
    assert s3_leg_symbol(defect, 0).is_zero()
    assert s3_leg_symbol(defect, 1).is_zero()


def test_s2_leg_symbol_kills_defect_letters():
    pres = sphere2_presentation()
    R, Rstar, A = pres.gen("R"), pres.gen("R*"), pres.gen("A")
    assert s2_leg_symbol(R * Rstar) == LaurentPoly.exact({0: 1})
    assert s2_leg_symbol(A).is_zero()
    assert set(s2_leg_symbol(R * R).terms) == {2}


# -- leg assignments -------------------------------------------------------------


def _numeric_residual(ops, q, d, letter):
    a = ops[letter].mat
    astar = ops[letter + "*"].mat
    rel = astar @ a - q * (a @ astar) - (1.0 - q) * np.eye(d)
    return np.max(np.abs(rel[: d - 2, : d - 2]))


def test_s3_leg_relations():
    d = PARAMS.d
    for leg in (0, 1):
        ops = s3_leg_assignment(leg, PARAMS, d)
        assert _numeric_residual(ops, PARAMS.q, d, "a") < 1e-13
        assert _numeric_residual(ops, PARAMS.p, d, "b") < 1e-13
        swap = ops["a"].mat @ ops["b"].mat - ops["b"].mat @ ops["a"].mat
        assert np.max(np.abs(swap)) == 0.0
    with pytest.raises(ValueError):
        s3_leg_assignment(2, PARAMS)


def test_s2_leg_relations():
    d = PARAMS.d
    for leg in (0, 1):
        ops = s2_leg_assignment(leg, PARAMS, d)
        R, Rs = ops["R"].mat, ops["R*"].mat
        A, B = ops["A"].mat, ops["B"].mat
        eye = np.eye(d)
        inner = np.s_[: d - 2, : d - 2]
        assert np.max(np.abs((Rs @ R - eye + PARAMS.q * A + PARAMS.p * B)[inner])) < 1e-13
        assert np.max(np.abs((R @ Rs - eye + A + B)[inner])) < 1e-13
        assert np.max(np.abs(A @ B)) == 0.0


# -- the doubled picture -----------------------------------------------------------


def test_iota_basic_structure():
    pres = sphere3_presentation()
    a = pres.gen("a")
    e = iota(a, PARAMS, 12)
    assert e.degrees() == [-1]
    op0, sym0 = e.legs[0][-1]
    op1, sym1 = e.legs[1][-1]
    assert sym0 == LaurentPoly.exact({1: 1})
    assert sym1 == LaurentPoly.exact({0: 1})
    assert op0.bandwidth == 1
    assert np.array_equal(op1.mat.real, np.eye(12))
    assert e.w_compatible()


def test_iota_symbol_side_is_multiplicative():
    pres = sphere3_presentation()
    gens = [pres.gen(name) for name in ("a", "a*", "b", "b*")]
    rng = random.Random(7)

    def rand_elem():
        out = pres.one() * 0
        for _ in range(3):
            word = pres.one()
            for _ in range(rng.randrange(1, 4)):
                word = word * gens[rng.randrange(4)]
            out = out + rng.randrange(-2, 3) * word
        return out

    for _ in range(5):
        x, y = rand_elem(), rand_elem()
        ex, ey, exy = iota(x, PARAMS, 8), iota(y, PARAMS, 8), iota(x * y, PARAMS, 8)
        for leg in (0, 1):
            assert exy.leg_bilaurent(leg) == ex.leg_bilaurent(leg) * ey.leg_bilaurent(leg)
        assert exy.w_compatible()


def _disc_matrix(params, d):
    import math

    mat = np.zeros((d, d), dtype=np.complex128)
    for n in range(d - 1):
        mat[n + 1, n] = math.sqrt(1.0 - params.q ** (n + 1))
    return mat


def test_extract_degree_builds_twisted_pairs():
    pres = sphere3_presentation()
    a = pres.gen("a")
    e = iota(a, PARAMS, 12)
    fp = extract_degree(e, -1)
    assert fp is not None and fp.twist == -1
    assert fp.sym0 == LaurentPoly.exact({1: 1})
    assert extract_degree(e, 5) is None
    assert np.max(np.abs(fp.t0.mat - _disc_matrix(PARAMS, 12))) < 1e-15


def test_kron_legs_satisfy_relations_on_interior():
    d, w = 20, 6
    for leg in (0, 1):
        ops = iota_kron_assignment(leg, PARAMS, d, w)
        idx = kron_interior(d, w, 2, 2)
        eye = np.eye(d * (2 * w + 1))

        def interior_max(mat):
            return np.max(np.abs(mat[np.ix_(idx, idx)]))

        a, astar = ops["a"], ops["a*"]
        b, bstar = ops["b"], ops["b*"]
        assert interior_max(astar @ a - PARAMS.q * (a @ astar) - (1 - PARAMS.q) * eye) < 1e-10
        assert interior_max(bstar @ b - PARAMS.p * (b @ bstar) - (1 - PARAMS.p) * eye) < 1e-10
        assert interior_max(a @ b - b @ a) < 1e-10
        assert interior_max(a @ bstar - bstar @ a) < 1e-10
        sphere = (a @ astar) @ (b @ bstar) - a @ astar - b @ bstar + eye
        assert interior_max(sphere) < 1e-10


def test_evaluate_raw_matches_word_product():
    pres = sphere3_presentation()
    a, b = pres.gen("a"), pres.gen("b")
    ops = iota_kron_assignment(0, PARAMS, 6, 2)
    got = evaluate_raw(a * b, ops, PARAMS)
    assert np.max(np.abs(got - ops["a"] @ ops["b"])) < 1e-14


# -- the equatorial family ---------------------------------------------------------


def test_podles_symbols_and_membership():
    pp = podles_generators(PARAMS, 20)
    assert pp.zeta.symbols_zero()
    assert pp.eta.sym0 == LaurentPoly.exact({1: S})
    assert pp.eta.sym1 == LaurentPoly.exact({1: S})
    assert pp.eta.twist == 0
    want = np.diag(PARAMS.q ** (2 * np.arange(20.0)))
    assert np.max(np.abs(pp.t.mat - want)) < 1e-15


def test_podles_spectral_relations():
    d = 20
    pp = podles_generators(PARAMS, d)
    s2 = PARAMS.s**2
    qi2 = PARAMS.q**-2
    eye = np.eye(d)
    for zeta, eta in ((pp.zeta.t0.mat, pp.eta.t0.mat), (pp.zeta.t1.mat, pp.eta.t1.mat)):
        inner = np.s_[: d - 2, : d - 2]
        lhs = eta.conj().T @ eta
        rhs = (s2 * eye + zeta) @ (eye - zeta)
        assert np.max(np.abs((lhs - rhs)[inner])) < 1e-12
        lhs2 = eta @ eta.conj().T
        rhs2 = (s2 * eye + qi2 * zeta) @ (eye - qi2 * zeta)
        assert np.max(np.abs(lhs2 - rhs2)) < 1e-12
        comm = zeta @ eta - PARAMS.q**2 * (eta @ zeta)
        assert np.max(np.abs(comm)) < 1e-12


def test_polar_part_of_eta_is_shiftlike():
    pp = podles_generators(PARAMS, 24)
    polar = polar_part(pp.eta)
    assert polar.sym0 == LaurentPoly.exact({1: 1})
    assert polar.sym1 == LaurentPoly.exact({1: 1})
    assert trusted_diff_norm(polar.t0, shift(24), guard=1) < 1e-10
    assert trusted_diff_norm(polar.t1, shift(24), guard=1) < 1e-10


def test_polar_part_rejects_fat_symbols():
    one = identity(8)
    sym = LaurentPoly.exact({0: 1, 1: 1})
    fp = FibrePair(one, one, sym, sym, 0)
    with pytest.raises(ValueError):
        polar_part(fp)


# -- numeric line bundles -----------------------------------------------------------


@pytest.mark.parametrize("N", [1, -1, 2])
def test_en_numeric_idempotent_and_symbol_trace(N):
    d = 24
    pairs, syms = en_numeric(N, PARAMS, d=d)
    n1 = abs(N) + 1
    assert len(pairs) == n1 and len(syms) == n1
    square = fp_matmul(pairs, pairs)
    for i in range(n1):
        for j in range(n1):
            assert trusted_diff_norm(square[i][j].t0, pairs[i][j].t0, guard=1) < 1e-10
            assert trusted_diff_norm(square[i][j].t1, pairs[i][j].t1, guard=1) < 1e-10
            assert pairs[i][j].twist == 0
    trace_sym = syms[0][0]
    for k in range(1, n1):
        trace_sym = trace_sym + syms[k][k]
    assert trace_sym == LaurentPoly.exact({0: 1})


def test_en_numeric_literal_defect_shows_up():
    # the literal base assignment leaves an order (q - p) failure of E^2 = E
    pairs, _ = en_numeric(1, PARAMS, assignment="literal", d=24)
    square = fp_matmul(pairs, pairs)
    defect = max(
        trusted_diff_norm(square[i][j].t1, pairs[i][j].t1, guard=1)
        for i in range(2)
        for j in range(2)
    )
    assert defect > 1e-3
