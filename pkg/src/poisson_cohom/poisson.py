"""Poisson structures, Poisson brackets and Schouten brackets.

Two multivector flavors live here.  MultiVector absorbs polynomial
coefficients into one coefficient per wedge of coordinate vector fields
(the usual C^inf-module picture).  GradedMultiVector keeps each wedge
factor as a separate homogeneous generator w^A d_i, so x1*d1 ^ x1^2*d1
is nonzero there; it is the carrier of the R-linear Schouten bracket.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .algebra import (MultiIndex, RatPoly, mi_add, mi_degree, mono_index,
                      parse_poly, format_poly)


class PoissonStructure:
    """Antisymmetric table p_ij of h-homogeneous polynomial entries."""

    def __init__(self, n: int, h: int, entries: dict, name: str = "", check: bool = True):
        """entries maps (i, j) with 0 <= i < j < n to RatPoly."""
        self.n = n
        self.h = h
        self.name = name
        self.p: dict = {}
        for (i, j), poly in entries.items():
            if not (0 <= i < j < n):
                raise ValueError("entry indices must satisfy 0 <= i < j < n")
            if poly.is_zero():
                continue
            if not poly.is_homogeneous() or poly.degree() != h:
                raise ValueError("entry p[%d,%d] is not %d-homogeneous" % (i + 1, j + 1, h))
            self.p[(i, j)] = poly
        if check:
            ok, cert = jacobi_check(self)
            if not ok:
                (i, j, k), res = cert
                raise ValueError("Jacobi identity fails at (%d,%d,%d): %s"
                                 % (i + 1, j + 1, k + 1, format_poly(res)))

    def entry(self, i: int, j: int) -> RatPoly:
        """p_ij with the sign convention p_ji = -p_ij, p_ii = 0."""
        if i == j:
            return RatPoly.zero(self.n)
        if i < j:
            return self.p.get((i, j), RatPoly.zero(self.n))
        return -self.p.get((j, i), RatPoly.zero(self.n))

    def is_trivial(self) -> bool:
        return not self.p

    def bracket(self, f: RatPoly, g: RatPoly) -> RatPoly:
        """Poisson bracket {f, g} = sum_{i<j} p_ij (di f dj g - dj f di g)."""
        if f.n != self.n or g.n != self.n:
            raise ValueError("dimension mismatch")
        out = RatPoly.zero(self.n)
        for (i, j), pij in self.p.items():
            term = f.partial(i) * g.partial(j) - f.partial(j) * g.partial(i)
            if not term.is_zero():
                out = out + pij * term
        return out

    def as_multivector(self) -> "MultiVector":
        terms: dict = {}
        for (i, j), pij in self.p.items():
            for a, c in pij.terms.items():
                terms[(a, (i, j))] = c
        return MultiVector(self.n, 2, terms)

    def serialize(self) -> str:
        lines = ["n = %d" % self.n, "h = %d" % self.h]
        for (i, j) in sorted(self.p):
            lines.append("p %d %d = %s" % (i + 1, j + 1, format_poly(self.p[(i, j)])))
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return "PoissonStructure(%s)" % (self.name or "n=%d,h=%d" % (self.n, self.h))


def jacobi_check(pi: PoissonStructure):
    """(True, None) if the cyclic-sum Jacobi condition holds identically,
    else (False, ((i, j, k), residual))."""
    n = pi.n
    for i, j, k in itertools.combinations(range(n), 3):
        res = RatPoly.zero(n)
        for (a, b, c) in ((i, j, k), (j, k, i), (k, i, j)):
            # sum_l p_{cl} d_l p_{ab}
            pab = pi.entry(a, b)
            if pab.is_zero():
                continue
            for lam in range(n):
                pcl = pi.entry(c, lam)
                if pcl.is_zero():
                    continue
                res = res + pcl * pab.partial(lam)
        if not res.is_zero():
            return False, ((i, j, k), res)
    return True, None


def verify_linear_candidate(cs) -> bool:
    """Check the three quadratic conditions for a 1-homogeneous 2-vector
    on R^3 written with coefficients c1..c9 as

        (c1 x1 + c2 x2 + c3 x3) d1^d2 + (c4 x1 + c5 x2 + c6 x3) d2^d3
        + (c7 x1 + c8 x2 + c9 x3) d3^d1.
    """
    c = [Fraction(0)] + [Fraction(v) for v in cs]
    if len(c) != 10:
        raise ValueError("need exactly 9 coefficients")
    eq1 = c[1] * c[5] - c[2] * c[4] + c[4] * c[9] - c[6] * c[7]
    eq2 = c[1] * c[8] - c[2] * c[7] + c[5] * c[9] - c[6] * c[8]
    eq3 = c[1] * c[9] - c[2] * c[6] + c[3] * c[5] - c[3] * c[7]
    return eq1 == 0 and eq2 == 0 and eq3 == 0


# ----------------------------------------------------------------------
# MultiVector: coefficients absorbed per coordinate wedge
# ----------------------------------------------------------------------

def _sort_axes(axes) -> tuple | None:
    """Sort an axis tuple, returning (sorted_axes, sign) or None on repeats."""
    axes = list(axes)
    sign = 1
    for i in range(1, len(axes)):
        j = i
        while j > 0 and axes[j - 1] > axes[j]:
            axes[j - 1], axes[j] = axes[j], axes[j - 1]
            sign = -sign
            j -= 1
    for i in range(1, len(axes)):
        if axes[i - 1] == axes[i]:
            return None
    return tuple(axes), sign


class MultiVector:
    """Degree-m polynomial multivector: sum of c * w^A d_{i1}^...^d_{im}."""

    __slots__ = ("n", "degree", "terms")

    def __init__(self, n: int, degree: int, terms: dict | None = None):
        self.n = n
        self.degree = degree
        self.terms: dict = {}
        if terms:
            for (a, axes), c in terms.items():
                c = Fraction(c)
                if not c:
                    continue
                if len(axes) != degree:
                    raise ValueError("axis tuple of wrong length")
                if any(axes[i] >= axes[i + 1] for i in range(len(axes) - 1)):
                    raise ValueError("axes must be strictly increasing")
                self.terms[(tuple(a), tuple(axes))] = c

    def is_zero(self) -> bool:
        return not self.terms

    def add_term(self, a: MultiIndex, axes, c) -> None:
        """Accumulate c * w^A d_axes, normalizing axis order (internal)."""
        if not c:
            return
        norm = _sort_axes(axes)
        if norm is None:
            return
        axes_sorted, sign = norm
        key = (tuple(a), axes_sorted)
        s = self.terms.get(key, Fraction(0)) + sign * c
        if s:
            self.terms[key] = s
        else:
            self.terms.pop(key, None)

    def __add__(self, other: "MultiVector") -> "MultiVector":
        if self.n != other.n or self.degree != other.degree:
            raise ValueError("mismatched multivectors")
        out = MultiVector(self.n, self.degree, dict(self.terms))
        for (a, axes), c in other.terms.items():
            out.add_term(a, axes, c)
        return out

    def scale(self, c) -> "MultiVector":
        c = Fraction(c)
        return MultiVector(self.n, self.degree,
                           {k: c * v for k, v in self.terms.items()} if c else {})

    def __sub__(self, other: "MultiVector") -> "MultiVector":
        return self + other.scale(-1)

    def __eq__(self, other) -> bool:
        return (isinstance(other, MultiVector) and self.n == other.n
                and self.degree == other.degree and self.terms == other.terms)

    def __repr__(self):
        return "MultiVector(n=%d, m=%d, %d terms)" % (self.n, self.degree, len(self.terms))


def schouten(p: MultiVector, q: MultiVector) -> MultiVector:
    """Schouten bracket on MultiVector, degree p+q-1.

    On monomial terms f d_I, g d_J (f = w^A, g = w^B):

      [f d_I, g d_J] = sum_a (-1)^(|I|-a) f (d_{I_a} g) d_{I\\a} ^ d_J
                     + sum_b (-1)^b      g (d_{J_b} f) d_I ^ d_{J\\b}

    with 1-based slot positions a, b; this is the bilinear extension of
    the decomposable formula and reduces to <X, df> against functions.
    """
    if p.n != q.n:
        raise ValueError("dimension mismatch")
    n = p.n
    deg = p.degree + q.degree - 1
    out = MultiVector(n, max(deg, 0))
    for (a, axes_i), ca in p.terms.items():
        for (b, axes_j), cb in q.terms.items():
            c = ca * cb
            pl = len(axes_i)
            # derivative of g-side along each I slot
            for pos, ax in enumerate(axes_i):
                if b[ax] == 0:
                    continue
                bb = list(b)
                bb[ax] -= 1
                coeff = c * b[ax] * (-1 if (pl - (pos + 1)) % 2 else 1)
                rest = axes_i[:pos] + axes_i[pos + 1:]
                out.add_term(mi_add(a, tuple(bb)), rest + axes_j, coeff)
            # derivative of f-side along each J slot
            for pos, ax in enumerate(axes_j):
                if a[ax] == 0:
                    continue
                aa = list(a)
                aa[ax] -= 1
                coeff = c * a[ax] * (-1 if (pos + 1) % 2 else 1)
                rest = axes_j[:pos] + axes_j[pos + 1:]
                out.add_term(mi_add(tuple(aa), b), axes_i + rest, coeff)
    return out


# ----------------------------------------------------------------------
# GradedMultiVector: R-linear wedges of homogeneous generators w^A d_i
# ----------------------------------------------------------------------

def gen_sort_key(gen) -> tuple:
    """Canonical order of generators (A, i): by |A|, then the descending
    grevlex position of A inside its degree, then the axis."""
    a, i = gen
    deg = mi_degree(a)
    return (deg, mono_index(len(a), deg)[a], i)


def _canonical_factors(factors) -> tuple | None:
    """Sort wedge factors, returning (tuple, sign); None when a factor repeats."""
    lst = list(factors)
    sign = 1
    keys = [gen_sort_key(g) for g in lst]
    for i in range(1, len(lst)):
        j = i
        while j > 0 and keys[j - 1] > keys[j]:
            keys[j - 1], keys[j] = keys[j], keys[j - 1]
            lst[j - 1], lst[j] = lst[j], lst[j - 1]
            sign = -sign
            j -= 1
    for i in range(1, len(lst)):
        if lst[i - 1] == lst[i]:
            return None
    return tuple(lst), sign


class GradedMultiVector:
    """R-linear combination of wedges of generators (A, i) = w^A d_{i+1}."""

    __slots__ = ("n", "degree", "terms")

    def __init__(self, n: int, degree: int, terms: dict | None = None):
        self.n = n
        self.degree = degree
        self.terms: dict = {}
        if terms:
            for factors, c in terms.items():
                self.add_term(factors, c)

    def add_term(self, factors, c) -> None:
        c = Fraction(c)
        if not c:
            return
        if len(factors) != self.degree:
            raise ValueError("wrong number of wedge factors")
        norm = _canonical_factors(factors)
        if norm is None:
            return
        key, sign = norm
        s = self.terms.get(key, Fraction(0)) + sign * c
        if s:
            self.terms[key] = s
        else:
            self.terms.pop(key, None)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "GradedMultiVector") -> "GradedMultiVector":
        if self.n != other.n or self.degree != other.degree:
            raise ValueError("mismatched graded multivectors")
        out = GradedMultiVector(self.n, self.degree, dict(self.terms))
        for factors, c in other.terms.items():
            out.add_term(factors, c)
        return out

    def scale(self, c) -> "GradedMultiVector":
        c = Fraction(c)
        return GradedMultiVector(self.n, self.degree,
                                 {k: c * v for k, v in self.terms.items()} if c else {})

    def __sub__(self, other: "GradedMultiVector") -> "GradedMultiVector":
        return self + other.scale(-1)

    def __eq__(self, other) -> bool:
        return (isinstance(other, GradedMultiVector) and self.n == other.n
                and self.degree == other.degree and self.terms == other.terms)

    def poly_degree(self) -> int:
        """Total polynomial degree, assuming homogeneity across terms."""
        degs = {sum(mi_degree(a) for a, _ in factors) for factors in self.terms}
        if len(degs) > 1:
            raise ValueError("not homogeneous")
        return degs.pop() if degs else 0

    def serialize(self) -> str:
        lines = []
        for factors in sorted(self.terms, key=lambda fs: [gen_sort_key(g) for g in fs]):
            c = self.terms[factors]
            slot = " ; ".join(_format_vf([(RatPoly.monomial(a), i)]) for a, i in factors)
            lines.append("v %s : %s" % (c, slot))
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return "GradedMultiVector(n=%d, m=%d, %d terms)" % (self.n, self.degree, len(self.terms))


def _lie_bracket_gens(u, v, n: int) -> list:
    """Jacobi-Lie bracket [w^A d_i, w^B d_j] as a list of (gen, coeff)."""
    (a, i), (b, j) = u, v
    out = []
    if b[i]:
        bb = list(b)
        bb[i] -= 1
        out.append(((mi_add(a, tuple(bb)), j), Fraction(b[i])))
    if a[j]:
        aa = list(a)
        aa[j] -= 1
        out.append(((mi_add(tuple(aa), b), i), Fraction(-a[j])))
    return out


def r_schouten(p: GradedMultiVector, q: GradedMultiVector) -> GradedMultiVector:
    """R-linear Schouten bracket keeping wedge factors unmerged:
    [u1^..^up, v1^..^vq] = sum_{i,j} (-1)^{i+j} [u_i, v_j] ^ rest."""
    if p.n != q.n:
        raise ValueError("dimension mismatch")
    out = GradedMultiVector(p.n, p.degree + q.degree - 1)
    for fu, cu in p.terms.items():
        for fv, cv in q.terms.items():
            base = cu * cv
            for i, u in enumerate(fu):
                for j, v in enumerate(fv):
                    sign = -1 if (i + j) % 2 else 1  # (-1)^{(i+1)+(j+1)}
                    for gen, bc in _lie_bracket_gens(u, v, p.n):
                        rest = (gen,) + fu[:i] + fu[i + 1:] + fv[:j] + fv[j + 1:]
                        out.add_term(rest, base * bc * sign)
    return out


def phi_flatten(p: GradedMultiVector) -> MultiVector:
    """Absorb polynomial parts: the natural map onto MultiVector."""
    out = MultiVector(p.n, p.degree)
    zero = tuple([0] * p.n)
    for factors, c in p.terms.items():
        total = zero
        axes = []
        for a, i in factors:
            total = mi_add(total, a)
            axes.append(i)
        out.add_term(total, tuple(axes), c)
    return out


def graded_from_multivector(m: MultiVector) -> GradedMultiVector:
    """Lift c * w^A d_I to the graded side, with w^A on the first slot."""
    out = GradedMultiVector(m.n, m.degree)
    zero = tuple([0] * m.n)
    for (a, axes), c in m.terms.items():
        factors = tuple([(a if k == 0 else zero, ax) for k, ax in enumerate(axes)])
        out.add_term(factors, c)
    return out


def wedge2(vf1: list, vf2: list, n: int) -> GradedMultiVector:
    """R-bilinear wedge of two polynomial vector fields given as lists of
    (RatPoly, axis); expands polynomials into homogeneous generators."""
    out = GradedMultiVector(n, 2)
    for p1, i1 in vf1:
        for a1, c1 in p1.terms.items():
            for p2, i2 in vf2:
                for a2, c2 in p2.terms.items():
                    out.add_term(((a1, i1), (a2, i2)), c1 * c2)
    return out


# ----------------------------------------------------------------------
# Structure-definition files
# ----------------------------------------------------------------------

class StructureFileError(ValueError):
    pass


def _parse_vf(text: str, n: int) -> list:
    """A vector field as signed products, e.g. '1 d1 - 1 d3' or 'x1*d3'."""
    out = []
    # split on top-level '+'/'-' while keeping signs
    tokens = text.replace("-", "+-").split("+")
    for tok in tokens:
        tok = tok.strip()
        if not tok:
            continue
        sign = 1
        if tok.startswith("-"):
            sign = -1
            tok = tok[1:].strip()
        if "d" not in tok:
            raise StructureFileError("vector-field term %r lacks a d<i> factor" % tok)
        head, _, tail = tok.rpartition("d")
        head = head.strip().rstrip("*").strip()
        axis = int(tail)
        if not (1 <= axis <= n):
            raise StructureFileError("axis d%d out of range" % axis)
        poly = parse_poly(head, n) if head else RatPoly.const(n, 1)
        out.append((poly.scale(sign), axis - 1))
    return out


def parse_structure(text: str, check: bool = True):
    """Parse a structure-definition file.

    Lines: 'n = <int>', 'h = <int>', then either Poisson entries
    'p i j = <polynomial>' (1-based, i < j) or R-wedge 2-vector lines
    'v <vfield> ; <vfield>' for Poisson-like structures.  Returns a
    PoissonStructure or a GradedMultiVector.
    """
    n = h = None
    p_entries: dict = {}
    v_terms = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("n"):
            n = int(line.split("=", 1)[1])
            continue
        if line.startswith("h"):
            h = int(line.split("=", 1)[1])
            continue
        if line.startswith("p"):
            if n is None:
                raise StructureFileError("n must come before entries")
            head, rhs = line.split("=", 1)
            parts = head.split()
            if len(parts) != 3:
                raise StructureFileError("bad entry line: %r" % raw)
            i, j = int(parts[1]) - 1, int(parts[2]) - 1
            if not (0 <= i < j < n):
                raise StructureFileError("entry indices must satisfy 1 <= i < j <= n")
            if (i, j) in p_entries:
                raise StructureFileError("duplicate entry p %d %d" % (i + 1, j + 1))
            p_entries[(i, j)] = parse_poly(rhs.strip(), n)
            continue
        if line.startswith("v"):
            if n is None:
                raise StructureFileError("n must come before entries")
            body = line[1:].strip()
            if ":" in body:
                coeff_text, body = body.split(":", 1)
                coeff = Fraction(coeff_text.strip())
            else:
                coeff = Fraction(1)
            slots = body.split(";")
            if len(slots) != 2:
                raise StructureFileError("v lines take exactly two ';'-separated fields")
            term = wedge2(_parse_vf(slots[0], n), _parse_vf(slots[1], n), n).scale(coeff)
            v_terms.append(term)
            continue
        raise StructureFileError("unrecognized line: %r" % raw)
    if n is None or h is None:
        raise StructureFileError("both n and h are required")
    if v_terms and p_entries:
        raise StructureFileError("cannot mix p and v entries")
    if v_terms:
        acc = GradedMultiVector(n, 2)
        for t in v_terms:
            acc = acc + t
        if check:
            if acc.poly_degree() != h:
                raise StructureFileError("2-vector is not %d-homogeneous" % h)
            if not r_schouten(acc, acc).is_zero():
                raise StructureFileError("R-Schouten self-bracket does not vanish")
        return acc
    return PoissonStructure(n, h, p_entries, check=check)


def _format_vf(vf: list) -> str:
    parts = []
    for poly, axis in vf:
        parts.append("%s*d%d" % (format_poly(poly), axis + 1))
    return " + ".join(parts)
