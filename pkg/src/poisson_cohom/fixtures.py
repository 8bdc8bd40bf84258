"""Named structures backing the golden tables and the test suite."""

from __future__ import annotations

from fractions import Fraction

from .algebra import RatPoly, parse_poly
from .poisson import GradedMultiVector, PoissonStructure, parse_structure, wedge2


def _poisson(n: int, h: int, entries: dict, name: str) -> PoissonStructure:
    parsed = {(i - 1, j - 1): parse_poly(text, n) for (i, j), text in entries.items()}
    return PoissonStructure(n, h, parsed, name=name)


def sl2() -> PoissonStructure:
    """Lie-Poisson of sl(2): {x1,x2}=x3, {x3,x1}=2*x1, {x3,x2}=-2*x2."""
    return _poisson(3, 1, {(1, 2): "x3", (1, 3): "-2*x1", (2, 3): "2*x2"}, "sl2")


def sl2_r4() -> PoissonStructure:
    """sl(2) + a central generator x4 on R^4."""
    return _poisson(4, 1, {(1, 2): "x3", (1, 3): "-2*x1", (2, 3): "2*x2"}, "sl2_r4")


def so3() -> PoissonStructure:
    return _poisson(3, 1, {(1, 2): "x3", (2, 3): "x1", (1, 3): "-x2"}, "so3")


def heisenberg() -> PoissonStructure:
    """Lie-Poisson of the 3-dim Heisenberg algebra: {x1,x2}=x3 central."""
    return _poisson(3, 1, {(1, 2): "x3"}, "heisenberg")


def solvable22() -> PoissonStructure:
    """Upper-triangular (2,2) solvable algebra: [A1,A3]=A3, [A2,A3]=-A3."""
    return _poisson(3, 1, {(1, 3): "x3", (2, 3): "-x3"}, "solvable22")


def h2_case1() -> PoissonStructure:
    return _poisson(3, 2, {(2, 3): "1/2*x1^2", (1, 3): "-1/2*x2^2", (1, 2): "1/2*x3^2"},
                    "h2_case1")


def h2_case2() -> PoissonStructure:
    return _poisson(3, 2, {(1, 2): "x1*x2", (2, 3): "x2*x3", (1, 3): "-x3*x1"}, "h2_case2")


def h2_case3() -> PoissonStructure:
    return _poisson(3, 2, {(2, 3): "x1^2", (1, 3): "-x3*x1", (1, 2): "x1*x2"}, "h2_case3")


def square_bracket() -> PoissonStructure:
    """The 2-homogeneous structure with {x1,x2}=x3^2 and x3 central."""
    return _poisson(3, 2, {(1, 2): "x3^2"}, "square_bracket")


def symplectic_r2() -> PoissonStructure:
    """Constant symplectic structure d1^d2 on the plane."""
    return _poisson(2, 0, {(1, 2): "1"}, "symplectic_r2")


def constant_r3() -> PoissonStructure:
    """Degenerate constant structure d1^d2 on R^3."""
    return _poisson(3, 0, {(1, 2): "1"}, "constant_r3")


def pibar() -> PoissonStructure:
    """(x2^2-x3^2) d1^d2 + 2(x2*x3+x3^2) d1^d3; 2-homogeneous Poisson."""
    return _poisson(3, 2, {(1, 2): "x2^2 - x3^2", (1, 3): "2*x2*x3 + 2*x3^2"}, "pibar")


def type2(phi_text: str, f_text: str, g_text: str) -> PoissonStructure:
    """phi * d1 ^ (f d2 + g d3) on R^3 with f, g polynomials in x2, x3 only;
    such tensors always satisfy the Jacobi identity."""
    n = 3
    phi = parse_poly(phi_text, n)
    f, g = parse_poly(f_text, n), parse_poly(g_text, n)
    for poly in (f, g):
        if any(a[0] for a in poly.terms):
            raise ValueError("fields must not involve x1")
    entries = {(0, 1): phi * f, (0, 2): phi * g}
    h = (phi * f).degree() if not (phi * f).is_zero() else (phi * g).degree()
    return PoissonStructure(n, h, entries, name="type2")


def type31(n: int, p: int, cs) -> PoissonStructure:
    """sum_{i<j} c_ij x_i^p d_i ^ x_j^p d_j with cs[(i, j)] 1-based."""
    entries = {}
    for (i, j), c in cs.items():
        poly = RatPoly.monomial(tuple(p if k in (i - 1, j - 1) else 0 for k in range(n)), c)
        entries[(i - 1, j - 1)] = poly
    return PoissonStructure(n, 2 * p, entries, name="type31")


def type32(p: int, cs) -> PoissonStructure:
    """sum_i c_i x_i^p d_{i+1} ^ d_{i+2} on R^3 (cyclic indices)."""
    entries = {}
    for i in range(3):
        j, k = (i + 1) % 3, (i + 2) % 3
        mono = RatPoly.monomial(tuple(p if t == i else 0 for t in range(3)), cs[i])
        lo, hi = min(j, k), max(j, k)
        poly = mono if (j, k) == (lo, hi) else -mono
        entries[(lo, hi)] = entries.get((lo, hi), RatPoly.zero(3)) + poly
    return PoissonStructure(3, p, entries, name="type32")


def poisson_like_h1() -> GradedMultiVector:
    """(d1 - d3) ^ (x1 d3 + x3 d3), taken verbatim; the repeated d3 in the
    second field is intentional and the self-bracket still vanishes."""
    n = 3
    u = [(RatPoly.const(n, 1), 0), (RatPoly.const(n, -1), 2)]
    v = [(parse_poly("x1", n), 2), (parse_poly("x3", n), 2)]
    return wedge2(u, v, n)


def poisson_like_h2() -> GradedMultiVector:
    """The eight-term 2-homogeneous Poisson-like 2-vector whose flattening
    is the pibar structure."""
    n = 3
    one = RatPoly.const(n, 1)

    def mono(text):
        return parse_poly(text, n)

    terms = [
        (-1, [(one, 2)], [(mono("x2*x3"), 0)]),
        (1, [(mono("x2"), 0)], [(mono("x2"), 1)]),
        (1, [(mono("x3"), 0)], [(mono("x3"), 2)]),
        (1, [(one, 1)], [(mono("x3^2"), 0)]),
        (-1, [(mono("x2"), 1)], [(mono("x3"), 0)]),
        (1, [(mono("x2"), 0)], [(mono("x3"), 2)]),
        (-1, [(one, 2)], [(mono("x3^2"), 0)]),
        (1, [(one, 1)], [(mono("x2*x3"), 0)]),
    ]
    acc = GradedMultiVector(n, 2)
    for c, u, v in terms:
        acc = acc + wedge2(u, v, n).scale(c)
    return acc


def poisson_like_h0() -> GradedMultiVector:
    """d1 ^ d2 on R^3 as a graded 2-vector."""
    n = 3
    return wedge2([(RatPoly.const(n, 1), 0)], [(RatPoly.const(n, 1), 1)], n)


# ----------------------------------------------------------------------
# Lie-Poisson structures from matrix Lie algebras
# ----------------------------------------------------------------------

def _solve_dense(columns: list, target: list) -> list:
    """Solve sum_k c_k columns[k] = target exactly (unique solution)."""
    rows = len(target)
    ncols = len(columns)
    aug = [[Fraction(columns[k][r]) for k in range(ncols)] + [Fraction(target[r])]
           for r in range(rows)]
    piv = 0
    piv_cols = []
    for c in range(ncols):
        row = next((r for r in range(piv, rows) if aug[r][c]), None)
        if row is None:
            continue
        aug[piv], aug[row] = aug[row], aug[piv]
        pv = aug[piv][c]
        aug[piv] = [v / pv for v in aug[piv]]
        for r in range(rows):
            if r != piv and aug[r][c]:
                f = aug[r][c]
                aug[r] = [v - f * w for v, w in zip(aug[r], aug[piv])]
        piv_cols.append(c)
        piv += 1
    sol = [Fraction(0)] * ncols
    for r, c in enumerate(piv_cols):
        sol[c] = aug[r][ncols]
    for r in range(piv, rows):
        if aug[r][ncols]:
            raise ValueError("bracket does not lie in the span of the basis")
    return sol


def lie_poisson_from_matrices(basis: list, name: str) -> PoissonStructure:
    """Lie-Poisson structure on the dual of the span of square matrices."""
    dim = len(basis)
    size = len(basis[0])
    flat = [[basis[k][r][c] for r in range(size) for c in range(size)]
            for k in range(dim)]

    def commutator(a, b):
        return [[sum(a[r][t] * b[t][c] - b[r][t] * a[t][c] for t in range(size))
                 for c in range(size)] for r in range(size)]

    entries = {}
    for i in range(dim):
        for j in range(i + 1, dim):
            comm = commutator(basis[i], basis[j])
            target = [comm[r][c] for r in range(size) for c in range(size)]
            coeffs = _solve_dense(flat, target)
            terms = {}
            for k, ck in enumerate(coeffs):
                if ck:
                    terms[tuple(1 if t == k else 0 for t in range(dim))] = ck
            if terms:
                entries[(i, j)] = RatPoly(dim, terms)
    return PoissonStructure(dim, 1, entries, name=name)


def _basis_so(k: int) -> list:
    out = []
    for i in range(k):
        for j in range(i + 1, k):
            mat = [[0] * k for _ in range(k)]
            mat[i][j] = 1
            mat[j][i] = -1
            out.append(mat)
    return out


def so4() -> PoissonStructure:
    return lie_poisson_from_matrices(_basis_so(4), "so4")


def so5() -> PoissonStructure:
    return lie_poisson_from_matrices(_basis_so(5), "so5")


def sl3() -> PoissonStructure:
    basis = []
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            mat = [[0] * 3 for _ in range(3)]
            mat[i][j] = 1
            basis.append(mat)
    h1 = [[1, 0, 0], [0, -1, 0], [0, 0, 0]]
    h2 = [[0, 0, 0], [0, 1, 0], [0, 0, -1]]
    basis.extend([h1, h2])
    return lie_poisson_from_matrices(basis, "sl3")


_BUILTINS = {
    "sl2": sl2,
    "sl2_r4": sl2_r4,
    "so3": so3,
    "heisenberg": heisenberg,
    "solvable22": solvable22,
    "h2_case1": h2_case1,
    "h2_case2": h2_case2,
    "h2_case3": h2_case3,
    "square_bracket": square_bracket,
    "symplectic_r2": symplectic_r2,
    "constant_r3": constant_r3,
    "pibar": pibar,
    "poisson_like_h0": poisson_like_h0,
    "poisson_like_h1": poisson_like_h1,
    "poisson_like_h2": poisson_like_h2,
    "so4": so4,
    "so5": so5,
    "sl3": sl3,
}


def builtin_names() -> list[str]:
    return sorted(_BUILTINS)


def load_structure(spec: str, check: bool = True):
    """Load 'builtin:<name>' or a structure-definition file path."""
    if spec.startswith("builtin:"):
        name = spec.split(":", 1)[1]
        if name not in _BUILTINS:
            raise ValueError("unknown builtin structure %r (have: %s)"
                             % (name, ", ".join(builtin_names())))
        return _BUILTINS[name]()
    with open(spec, "r", encoding="utf-8") as fh:
        obj = parse_structure(fh.read(), check=check)
    if isinstance(obj, PoissonStructure) and not obj.name:
        obj.name = spec
    return obj
