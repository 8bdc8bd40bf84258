from fractions import Fraction

import pytest

from poisson_cohom import fixtures as fx
from poisson_cohom.algebra import mono_index
from poisson_cohom.casimir import quotient_basis
from poisson_cohom.complexes import (PolyContext, PoissonLikeContext,
                                     basis_dimension_check, boundary_matrix,
                                     build_basis, cochain_matrix,
                                     constant_two_cochain, wedge_cochain_matrix,
                                     weight_degree_range, with_constants_split)
from poisson_cohom.engine import build_report, homology_vs_cohomology_check
from poisson_cohom.linalg import SparseMatrix, compose_is_zero, matmul, rank_kernel


def test_basis_sizes_match_tables():
    ctx = PolyContext(fx.sl2(), "bar")
    assert len(build_basis(ctx, 1, 1)) == 6
    assert len(build_basis(ctx, 3, 3)) == 245
    assert len(build_basis(ctx, 0, 0)) == 1
    assert len(build_basis(ctx, 0, 1)) == 0
    ham = PolyContext(fx.heisenberg(), "hamiltonian")
    assert len(build_basis(ham, 4, 1)) == 0
    assert len(build_basis(ham, 2, 1)) == 10


def test_basis_deterministic_and_distinct():
    ctx = PolyContext(fx.sl2(), "bar")
    b1 = build_basis(ctx, 2, 2)
    b2 = build_basis(PolyContext(fx.sl2(), "bar"), 2, 2)
    assert b1.elements == b2.elements
    assert len(set(b1.elements)) == len(b1)
    for tup in b1.elements:
        assert list(tup) == sorted(tup)


def test_signature_dimension_cross_check():
    for s, mode in ((fx.sl2(), "bar"), (fx.heisenberg(), "hamiltonian"),
                    (fx.symplectic_r2(), "bar")):
        ctx = PolyContext(s, mode)
        for w in range(0, 3):
            lo, hi = weight_degree_range(ctx, w)
            for m in range(lo, hi + 1):
                basis_dimension_check(ctx, m, w, build_basis(ctx, m, w))


def test_sl2_one_cochain_images():
    """The three coboundary values of the linear dual generators."""
    ctx = PolyContext(fx.sl2(), "bar")
    # generators of degree 1 are ordered x1, x2, x3
    img = {i: ctx.image2((1, i)) for i in range(3)}
    # d z1 = -2 z3 ^ z1 = +2 z1 ^ z3
    assert img[0] == [((1, 0), (1, 2), 2)]
    # d z2 = 2 z3 ^ z2 = -2 z2 ^ z3
    assert img[1] == [((1, 1), (1, 2), -2)]
    # d z3 = z2 ^ z1 = -z1 ^ z2
    assert img[2] == [((1, 0), (1, 1), -1)]


def test_sl2_two_cochain_images():
    """Spot-check two of the published degree-2 coboundary expansions.
    Degree-2 generators sit in the order x1^2, x1x2, x2^2, x1x3, x2x3, x3^2."""
    ctx = PolyContext(fx.sl2(), "bar")
    # d z_{200} = -4 z_{001}^z_{200} + 2 z_{100}^z_{101}
    assert ctx.image2((2, 0)) == [((1, 0), (2, 3), 2), ((1, 2), (2, 0), -4)]
    # d z_{110} = -2 z_{010}^z_{101} - 2 z_{011}^z_{100}
    assert ctx.image2((2, 1)) == [((1, 0), (2, 4), 2), ((1, 1), (2, 3), -2)]


def test_degree_zero_dual_images():
    # h > 0: the degree-0 dual is closed; h = 0: it maps to minus the
    # structure 2-cochain
    full_h1 = PolyContext(fx.sl2(), "full")
    assert full_h1.image2((0, 0)) == []
    full_h0 = PolyContext(fx.symplectic_r2(), "full")
    assert full_h0.image2((0, 0)) == [((1, 0), (1, 1), -1)]


def test_d_squared_zero_many_modes():
    jobs = [
        (PolyContext(fx.sl2(), "bar"), (0, 1, 2)),
        (PolyContext(fx.heisenberg(), "full"), (0, 1)),
        (PolyContext(fx.solvable22(), "hamiltonian"), (0, 1, 2)),
        (PolyContext(fx.symplectic_r2(), "bar"), (-2, -1, 0)),
        (PoissonLikeContext(fx.poisson_like_h1(), 1), (0, 1)),
        (PoissonLikeContext(fx.poisson_like_h2(), 2), (-3,)),
    ]
    for ctx, weights in jobs:
        for w in weights:
            lo, hi = weight_degree_range(ctx, w)
            bases = {m: build_basis(ctx, m, w) for m in range(lo, hi + 2)}
            mats = {m: cochain_matrix(ctx, bases[m], bases[m + 1])
                    for m in range(lo, hi + 1)}
            for m in range(lo, hi):
                assert compose_is_zero(mats[m + 1], mats[m])


def test_boundary_squared_zero():
    for s, mode in ((fx.sl2(), "bar"), (fx.heisenberg(), "hamiltonian")):
        ctx = PolyContext(s, mode)
        for w in (0, 1, 2):
            lo, hi = weight_degree_range(ctx, w)
            bases = {m: build_basis(ctx, m, w) for m in range(lo, hi + 2)}
            mats = {m: boundary_matrix(ctx, bases[m], bases[m - 1])
                    for m in range(lo + 1, hi + 1)}
            for m in range(lo + 2, hi + 1):
                assert compose_is_zero(mats[m - 1], mats[m])


def test_so3_matches_sl2_betti():
    """so(3) and sl(2) are isomorphic as Lie algebras, so the polynomial
    cohomology tables must agree even though the structures differ."""
    for w in (0, 1, 2):
        a = build_report(fx.so3(), "poly-bar", w)
        b = build_report(fx.sl2(), "poly-bar", w)
        assert a.dim_list() == b.dim_list()
        assert a.betti_list() == b.betti_list()


def test_coboundary_is_transpose_of_boundary():
    """The two differentials are implemented independently (reverse-index
    slot replacement vs pairwise bracket insertion); the dual pairing of
    the wedge bases forces the matrices to be exact transposes."""
    for s, mode, weights in ((fx.sl2(), "bar", (1, 2)),
                             (fx.heisenberg(), "hamiltonian", (1, 2)),
                             (fx.symplectic_r2(), "bar", (-2, 0))):
        ctx = PolyContext(s, mode)
        for w in weights:
            lo, hi = weight_degree_range(ctx, w)
            bases = {m: build_basis(ctx, m, w) for m in range(lo, hi + 2)}
            for m in range(lo, hi + 1):
                d = cochain_matrix(ctx, bases[m], bases[m + 1])
                bd = boundary_matrix(ctx, bases[m + 1], bases[m])
                assert d.transpose() == bd, (s.name, mode, w, m)


def test_homology_equals_cohomology():
    assert homology_vs_cohomology_check(fx.sl2(), "poly-bar", 1)
    assert homology_vs_cohomology_check(fx.sl2(), "poly-bar", 2)
    assert homology_vs_cohomology_check(fx.heisenberg(), "poly-bar", 2)
    assert homology_vs_cohomology_check(fx.heisenberg(), "hamiltonian", 2)
    assert homology_vs_cohomology_check(fx.heisenberg(), "hamiltonian", 3)


def test_heisenberg_homology_weight_one():
    ho = build_report(fx.heisenberg(), "hamiltonian", 1, direction="chain")
    co = build_report(fx.heisenberg(), "hamiltonian", 1)
    assert ho.dim_list() == co.dim_list() == [5, 10, 5]
    assert ho.betti_list() == co.betti_list() == [3, 5, 2]
    # pairing duality: the outgoing chain rank at m+1 is the cochain rank at m
    for m in (1, 2):
        assert ho.row_at(m + 1).rank == co.row_at(m).rank


def test_with_constants_split_additivity():
    for s in (fx.sl2(), fx.heisenberg(), fx.h2_case1()):
        bar = PolyContext(s, "bar")
        for w in range(0, 3):
            for m in range(0, 8):
                without, with_delta = with_constants_split(s, m, w)
                assert without == len(build_basis(bar, m, w))
                assert with_delta == len(build_basis(bar, m - 1, w + 2 - s.h))


def test_with_constants_split_rejects_h0():
    with pytest.raises(ValueError):
        with_constants_split(fx.symplectic_r2(), 2, 0)


def test_full_mode_betti_additivity_sl2():
    """Cohomology of the with-constants algebra splits as the direct sum
    of the plain part and the degree-shifted part."""
    s = fx.sl2()
    for w in (0, 1, 2):
        full = build_report(s, "poly-with-constants", w)
        bar_w = build_report(s, "poly-bar", w)
        bar_shift = build_report(s, "poly-bar", w + 2 - s.h)
        ms = {r.m for r in full.rows} | {r.m for r in bar_w.rows} | \
             {r.m + 1 for r in bar_shift.rows}
        for m in ms:
            expect = bar_w.row_at(m).betti + bar_shift.row_at(m - 1).betti
            assert full.row_at(m).betti == expect, (w, m)


def test_annihilator_mode_tables():
    sp = fx.symplectic_r2()
    rep0 = build_report(sp, "pi-annihilator", 0)
    assert rep0.row_at(0).dim == 0  # scalars removed
    assert [rep0.row_at(m).betti for m in range(8)] == [0, 0, 0, 0, 1, 0, 0, 1]
    repm2 = build_report(sp, "pi-annihilator", -2)
    bar = build_report(sp, "poly-bar", -2)
    assert repm2.dim_list() == bar.dim_list()
    assert repm2.betti_list() == bar.betti_list()


def test_kernel_dimension_identity_h0():
    """When the next plain cohomology vanishes, the kernel on the full
    complex is the sum of the plain kernel and the shifted kernel."""
    s = fx.symplectic_r2()
    for w in (-2, -1, 0):
        full = build_report(s, "poly-with-constants", w)
        bar_w = build_report(s, "poly-bar", w)
        bar_shift = build_report(s, "poly-bar", w + 2)
        for r in full.rows:
            m = r.m
            if bar_w.row_at(m + 1).betti != 0:
                continue
            expect = bar_w.row_at(m).kernel_dim + bar_shift.row_at(m - 1).kernel_dim
            assert r.kernel_dim == expect, (w, m)


def _embedding_matrix(pi, ham_ctx, bar_ctx, ham_basis, bar_basis):
    """Expand wedges of quotient dual functionals in the monomial dual
    wedge basis of the plain complex."""
    duals = {}

    def dual_as_gids(gid):
        if gid not in duals:
            j = gid[0]
            qb = quotient_basis(pi, j, ham_ctx.casimirs(j))
            func = qb.dual[gid[1]]
            idx = mono_index(pi.n, j)
            duals[gid] = [((j, idx[a]), c) for a, c in func.items()]
        return duals[gid]

    entries = {}
    for col, tup in enumerate(ham_basis.elements):
        expansions = [dual_as_gids(g) for g in tup]

        def rec(k, factors, coeff):
            if k == len(expansions):
                order = sorted(range(len(factors)), key=lambda i: factors[i])
                word = tuple(factors[i] for i in order)
                if len(set(word)) < len(word):
                    return
                inv = sum(1 for a in range(len(order)) for b in range(a + 1, len(order))
                          if order[a] > order[b])
                row = bar_basis.index[word]
                key = (row, col)
                s = entries.get(key, Fraction(0)) + coeff * (-1 if inv % 2 else 1)
                if s:
                    entries[key] = s
                else:
                    del entries[key]
                return
            for gid, c in expansions[k]:
                rec(k + 1, factors + [gid], coeff * c)

        rec(0, [], Fraction(1))
    return SparseMatrix(len(bar_basis), len(ham_basis), entries)


def test_hamiltonian_complex_embeds_in_plain_complex():
    """Independent validation of the quotient-mode differential: wedges of
    the dual functionals form a subcomplex of the plain complex, and the
    plain coboundary restricted to it equals the pushed-forward quotient
    coboundary (the two differentials intertwine with the embedding)."""
    for pi, weights in ((fx.heisenberg(), (1, 2)), (fx.sl2(), (2,)),
                        (fx.solvable22(), (1, 2))):
        ham = PolyContext(pi, "hamiltonian")
        bar = PolyContext(pi, "bar")
        for w in weights:
            lo, hi = weight_degree_range(ham, w)
            for m in range(lo, hi + 1):
                ham_src = build_basis(ham, m, w)
                ham_tgt = build_basis(ham, m + 1, w)
                bar_src = build_basis(bar, m, w)
                bar_tgt = build_basis(bar, m + 1, w)
                if not len(ham_src):
                    continue
                e_src = _embedding_matrix(pi, ham, bar, ham_src, bar_src)
                e_tgt = _embedding_matrix(pi, ham, bar, ham_tgt, bar_tgt)
                d_ham = cochain_matrix(ham, ham_src, ham_tgt)
                d_bar = cochain_matrix(bar, bar_src, bar_tgt)
                assert matmul(d_bar, e_src) == matmul(e_tgt, d_ham), (pi.name, w, m)


def test_wedge_matrix_against_basis_filter():
    """For the plane structure the annihilator kernel is spanned by the
    basis words containing a linear slot."""
    sp = fx.symplectic_r2()
    ctx = PolyContext(sp, "bar")
    two = constant_two_cochain(sp)
    for (m, w) in ((2, 0), (3, 0), (3, 1)):
        src = build_basis(ctx, m, w)
        tgt = build_basis(ctx, m + 2, w - 2)
        wedge = wedge_cochain_matrix(two, src, tgt)
        res = rank_kernel(wedge, want_basis=True)
        expect = sum(1 for tup in src.elements if any(g[0] == 1 for g in tup))
        assert res.kernel_dim == expect
