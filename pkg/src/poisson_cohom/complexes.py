"""Weighted (co)chain bases and exact differential matrices.

Every mode (polynomial algebra without constants, with constants, the
Hamiltonian quotient, the constant-structure annihilator subcomplex and
the Poisson-like multivector complex) supplies the same small interface:
graded generators with caps and weights plus the differential's action
on a single generator.  The basis/matrix builders below are shared.

Generator ids are (degree, position) pairs; cochain basis elements are
ascending tuples of generator ids, so wedge reordering signs reduce to
inversion counts computed with bisect.
"""

from __future__ import annotations

from bisect import bisect_left
from fractions import Fraction
from itertools import combinations, product

from .algebra import RatPoly, mono_basis, mono_index
from .casimir import casimir_space, normal_form
from .diagrams import degree_range, enumerate_signatures, sig_dim
from .linalg import SparseMatrix
from .poisson import GradedMultiVector, PoissonStructure, _lie_bracket_gens

GenId = tuple  # (degree, position within the degree block)


class Basis:
    __slots__ = ("elements", "index")

    def __init__(self, elements: list):
        self.elements = elements
        self.index = {t: i for i, t in enumerate(elements)}

    def __len__(self) -> int:
        return len(self.elements)


class PolyContext:
    """Cochain data of the polynomial algebra of a Poisson structure.

    mode 'bar' excludes constants (the quotient by the constants ideal),
    'full' includes the degree-0 slot, 'hamiltonian' works modulo the
    Casimir polynomials with the normal-form bracket.
    """

    include_m0 = True

    def __init__(self, pi: PoissonStructure, mode: str = "bar"):
        if mode not in ("bar", "full", "hamiltonian"):
            raise ValueError("unknown polynomial mode %r" % mode)
        self.pi = pi
        self.mode = mode
        self.n = pi.n
        self.h = pi.h
        self.start = 0 if mode == "full" else 1
        self._gens: dict = {}
        self._casimirs: dict = {}
        self._pair_cache: dict = {}
        self._rev_cache: dict = {}

    def wt(self, j: int) -> int:
        return j - 2 + self.h

    def gens(self, j: int) -> list:
        if j not in self._gens:
            monos = mono_basis(self.n, j)
            if self.mode == "hamiltonian":
                lms = set(self.casimirs(j).lms)
                monos = [a for a in monos if a not in lms]
            self._gens[j] = monos
        return self._gens[j]

    def cap(self, j: int) -> int:
        return len(self.gens(j))

    def casimirs(self, j: int):
        if j not in self._casimirs:
            self._casimirs[j] = casimir_space(self.pi, j)
        return self._casimirs[j]

    def label(self, gid: GenId):
        return self.gens(gid[0])[gid[1]]

    # -- bracket structure constants ------------------------------------
    def _pair_table(self, a: int, b: int) -> dict:
        """Brackets of generator pairs of degrees (a, b), expanded over the
        generator monomials of the target degree.  Keys are id pairs."""
        key = (a, b)
        if key in self._pair_cache:
            return self._pair_cache[key]
        target = a + b + self.h - 2
        if target >= self.start:
            tgt_index = {lab: pos for pos, lab in enumerate(self.gens(target))}
        else:
            tgt_index = {}
        table: dict = {}
        gens_a, gens_b = self.gens(a), self.gens(b)
        cas = self.casimirs(target) if (self.mode == "hamiltonian" and target >= 1) else None
        for pa, la in enumerate(gens_a):
            qs = range(pa + 1, len(gens_b)) if a == b else range(len(gens_b))
            for pb in qs:
                lb = gens_b[pb]
                br = self.pi.bracket(RatPoly.monomial(la), RatPoly.monomial(lb))
                if br.is_zero():
                    continue
                if cas is not None:
                    br = normal_form(cas, br)
                out = []
                for mono, c in br.terms.items():
                    pos = tgt_index.get(mono)
                    if pos is None:
                        if self.mode == "hamiltonian":
                            raise AssertionError("normal form left a non-basis monomial")
                        continue  # constants quotiented away in 'bar' mode
                    out.append(((target, pos), c))
                if out:
                    table[((a, pa), (b, pb))] = out
        self._pair_cache[key] = table
        return table

    def _splits(self, g_degree: int) -> list:
        """Degree pairs (a, b), a <= b, with a + b = g_degree + 2 - h."""
        total = g_degree + 2 - self.h
        out = []
        a = self.start
        while 2 * a <= total:
            b = total - a
            if b >= self.start:
                out.append((a, b))
            a += 1
        return out

    def image2(self, gid: GenId) -> list:
        """Coboundary of the dual generator: list of (ga, gb, coeff) with
        ga < gb meaning a summand coeff * z_ga ^ z_gb; the coefficient is
        minus the gid-component of the pair bracket."""
        deg = gid[0]
        if deg not in self._rev_cache:
            rev: dict = {}
            for a, b in self._splits(deg):
                for (ida, idb), expansion in self._pair_table(a, b).items():
                    for tgt, c in expansion:
                        rev.setdefault(tgt, []).append((ida, idb, -c))
            self._rev_cache[deg] = {g: sorted(lst) for g, lst in rev.items()}
        return self._rev_cache[deg].get(gid, [])

    def bracket1(self, g1: GenId, g2: GenId) -> list:
        """[u_{g1}, u_{g2}] expanded over generators (chain direction)."""
        if g1 == g2:
            return []
        swap = g1 > g2
        if swap:
            g1, g2 = g2, g1
        table = self._pair_table(g1[0], g2[0])
        out = table.get((g1, g2), [])
        if swap:
            out = [(g, -c) for g, c in out]
        return out


class PoissonLikeContext:
    """Cochain data for the R-linear multivector complex of a Poisson-like
    2-vector: generators are w^A d_i, the differential brackets with pi."""

    include_m0 = False  # tables never carry the scalar slot

    def __init__(self, pi_like: GradedMultiVector, h: int, check: bool = True):
        self.pi_like = pi_like
        self.n = pi_like.n
        self.h = h
        self.start = 0
        self._image2: dict = {}
        if pi_like.degree != 2:
            raise ValueError("Poisson-like structure must be a 2-vector")
        if check:
            from .poisson import r_schouten
            if not r_schouten(pi_like, pi_like).is_zero():
                raise ValueError("structure is not Poisson-like "
                                 "(nonzero R-Schouten self-bracket)")

    def wt(self, j: int) -> int:
        return j + 1 - self.h

    def gens(self, j: int) -> list:
        return [(a, i) for a in mono_basis(self.n, j) for i in range(self.n)]

    def cap(self, j: int) -> int:
        from math import comb
        return self.n * comb(self.n - 1 + j, j)

    def label(self, gid: GenId):
        j, pos = gid
        monos = mono_basis(self.n, j)
        return (monos[pos // self.n], pos % self.n)

    def _gen_id(self, gen) -> GenId:
        a, i = gen
        deg = sum(a)
        return (deg, mono_index(self.n, deg)[a] * self.n + i)

    def image2(self, gid: GenId) -> list:
        if gid in self._image2:
            return self._image2[gid]
        v = self.label(gid)
        acc: dict = {}
        for (u1, u2), c in self.pi_like.terms.items():
            # [u1 ^ u2, v] = [u1, v] ^ u2 - [u2, v] ^ u1
            for lead, other, sgn in ((u1, u2, 1), (u2, u1, -1)):
                for gen, bc in _lie_bracket_gens(lead, v, self.n):
                    ga, gb = self._gen_id(gen), self._gen_id(other)
                    if ga == gb:
                        continue
                    coeff = c * bc * sgn
                    if ga > gb:
                        ga, gb = gb, ga
                        coeff = -coeff
                    acc[(ga, gb)] = acc.get((ga, gb), Fraction(0)) + coeff
        result = [(ga, gb, c) for (ga, gb), c in sorted(acc.items()) if c]
        self._image2[gid] = result
        return result


# ----------------------------------------------------------------------
# basis and matrix builders
# ----------------------------------------------------------------------

def build_basis(ctx, m: int, w: int) -> Basis:
    """Deterministic basis of the degree-m, weight-w cochain space."""
    if m == 0:
        if w == 0 and ctx.include_m0:
            return Basis([()])
        return Basis([])
    elements = []
    for sig in enumerate_signatures(m, w, ctx.wt, ctx.cap, ctx.start):
        pools = []
        for j, k in sig:
            ids = [(j, p) for p in range(ctx.cap(j))]
            pools.append(list(combinations(ids, k)))
        for combo in product(*pools):
            tup = tuple(g for block in combo for g in block)
            elements.append(tup)
    return Basis(elements)


def _insert_pair(tup: tuple, slot: int, ga, gb):
    """Replace tup[slot] by the wedge ga^gb; (new_tuple, sign) or None."""
    prefix, suffix = tup[:slot], tup[slot + 1:]
    rest = prefix + suffix
    ia = bisect_left(rest, ga)
    if ia < len(rest) and rest[ia] == ga:
        return None
    ib = bisect_left(rest, gb)
    if ib < len(rest) and rest[ib] == gb:
        return None
    inv = (len(prefix) - bisect_left(prefix, ga)) + (len(prefix) - bisect_left(prefix, gb))
    inv += bisect_left(suffix, ga) + bisect_left(suffix, gb)
    newt = tuple(sorted(rest + (ga, gb)))
    return newt, (-1 if inv % 2 else 1)


def _insert_front(rest: tuple, gc):
    """Wedge gc onto a sorted tuple from the left; (new_tuple, sign) or None."""
    pos = bisect_left(rest, gc)
    if pos < len(rest) and rest[pos] == gc:
        return None
    newt = rest[:pos] + (gc,) + rest[pos:]
    return newt, (-1 if pos % 2 else 1)


def cochain_matrix(ctx, src: Basis, tgt: Basis) -> SparseMatrix:
    """Exact matrix of the coboundary from src (degree m) to tgt (m+1)."""
    entries: dict = {}
    for col, tup in enumerate(src.elements):
        if tup == ():
            continue  # scalars are closed
        for slot in range(len(tup)):
            sign0 = -1 if slot % 2 else 1
            for ga, gb, c in ctx.image2(tup[slot]):
                placed = _insert_pair(tup, slot, ga, gb)
                if placed is None:
                    continue
                newt, sign = placed
                row = tgt.index.get(newt)
                if row is None:
                    raise AssertionError("differential left the weight-graded basis")
                key = (row, col)
                s = entries.get(key, Fraction(0)) + sign0 * sign * c
                if s:
                    entries[key] = s
                else:
                    del entries[key]
    return SparseMatrix(len(tgt), len(src), entries)


def boundary_matrix(ctx, src: Basis, tgt: Basis) -> SparseMatrix:
    """Exact matrix of the boundary operator from src (degree m) to tgt (m-1):
    sum over slot pairs of (-1)^{i+j} [u_i, u_j] wedged in front."""
    entries: dict = {}
    for col, tup in enumerate(src.elements):
        mlen = len(tup)
        for k in range(mlen):
            for l in range(k + 1, mlen):
                sign0 = -1 if (k + l) % 2 else 1  # (-1)^{(k+1)+(l+1)}
                expansion = ctx.bracket1(tup[k], tup[l])
                if not expansion:
                    continue
                rest = tup[:k] + tup[k + 1:l] + tup[l + 1:]
                for gc, c in expansion:
                    placed = _insert_front(rest, gc)
                    if placed is None:
                        continue
                    newt, sign = placed
                    row = tgt.index.get(newt)
                    if row is None:
                        raise AssertionError("boundary left the weight-graded basis")
                    key = (row, col)
                    s = entries.get(key, Fraction(0)) + sign0 * sign * c
                    if s:
                        entries[key] = s
                    else:
                        del entries[key]
    return SparseMatrix(len(tgt), len(src), entries)


def weight_degree_range(ctx, w: int) -> tuple:
    lo, hi = degree_range(w, ctx.wt, ctx.cap, ctx.start)
    return 0, max(hi, 0)


def basis_dimension_check(ctx, m: int, w: int, basis: Basis) -> None:
    """Structural cross-check: enumerated dimension equals the signature
    dimension sum from the diagrams module."""
    expect = sum(sig_dim(s, ctx.cap)
                 for s in enumerate_signatures(m, w, ctx.wt, ctx.cap, ctx.start))
    if m == 0:
        expect = 1 if (w == 0 and ctx.include_m0) else 0
    if expect != len(basis):
        raise AssertionError("basis size %d != signature total %d at (m=%d, w=%d)"
                             % (len(basis), expect, m, w))


# ----------------------------------------------------------------------
# with-constants split and annihilator subcomplex helpers
# ----------------------------------------------------------------------

def with_constants_split(pi: PoissonStructure, m: int, w: int) -> tuple:
    """Dimensions of the with-constants cochain space split into the part
    without the degree-0 slot and the part carrying it (h > 0 only)."""
    if pi.h == 0:
        raise ValueError("the split requires h > 0")
    full = PolyContext(pi, "full")
    delta = (0, 0)
    with_delta = without = 0
    for tup in build_basis(full, m, w).elements:
        if delta in tup:
            with_delta += 1
        else:
            without += 1
    return without, with_delta


def constant_two_cochain(pi: PoissonStructure) -> list:
    """The structure 2-cochain sum p_ij z_{e_i} ^ z_{e_j} of a constant
    (h = 0) structure, as [(gid_i, gid_j, coeff)]."""
    if pi.h != 0:
        raise ValueError("annihilator subcomplex needs a 0-homogeneous structure")
    out = []
    for (i, j), poly in sorted(pi.p.items()):
        c = poly.coeff(tuple([0] * pi.n))
        if c:
            out.append(((1, i), (1, j), c))
    return out


def wedge_cochain_matrix(two_cochain: list, src: Basis, tgt: Basis) -> SparseMatrix:
    """Matrix of sigma -> (2-cochain) ^ sigma."""
    entries: dict = {}
    for col, tup in enumerate(src.elements):
        for ga, gb, c in two_cochain:
            placed = _insert_pair((None,) + tup, 0, ga, gb)
            if placed is None:
                continue
            newt, sign = placed
            row = tgt.index.get(newt)
            if row is None:
                raise AssertionError("wedge left the weight-graded basis")
            key = (row, col)
            s = entries.get(key, Fraction(0)) + sign * c
            if s:
                entries[key] = s
            else:
                del entries[key]
    return SparseMatrix(len(tgt), len(src), entries)
