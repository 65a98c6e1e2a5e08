"""Independent sympy oracle for the frozen values in the test suite.

Run ``python3 tests/oracles/sympy_oracle.py`` to regenerate the table printed
at the end; the tests hard-code those numbers.  Nothing here imports nilcent:
the bilinear form is a random invariant form found by linear algebra, the
sl2-triple is solved for, and Gröbner dimensions come from sympy.
"""
from __future__ import annotations

import itertools
import random

import sympy as sp


def jordan_e(parts):
    n = sum(parts)
    E = sp.zeros(n, n)
    off = 0
    for lam in parts:
        for s in range(lam - 1):
            E[off + s + 1, off + s] = 1
        off += lam
    return E


def h_diag(parts):
    vals = []
    for lam in parts:
        vals += [2 * s - (lam - 1) for s in range(lam)]
    return sp.diag(*vals)


def unknown_matrix(n, name):
    syms = sp.symbols(f"{name}0:{n * n}")
    return sp.Matrix(n, n, syms), syms


def solve_space(exprs, syms):
    """Basis of the solution space of a homogeneous linear system, as substitutions."""
    A = sp.Matrix([[sp.diff(e, s) for s in syms] for e in exprs]) if exprs else sp.zeros(0, len(syms))
    return [list(v) for v in A.nullspace()]


def random_form(parts, eps, rng):
    """A random nondegenerate ε-symmetric form invariant under e and h."""
    n = sum(parts)
    E, H = jordan_e(parts), h_diag(parts)
    J, syms = unknown_matrix(n, "j")
    eqs = list(J.T - eps * J) + list(E.T * J + J * E) + list(H.T * J + J * H)
    basis = solve_space(eqs, syms)
    for _ in range(50):
        coeffs = [rng.randint(-5, 5) for _ in basis]
        vec = [sum(c * b[k] for c, b in zip(coeffs, basis)) for k in range(n * n)]
        M = sp.Matrix(n, n, vec)
        if M.det() != 0:
            return M
    raise RuntimeError("no nondegenerate form found")


def algebra_basis(n, J, extra):
    """Basis of {X : X^T J + J X = 0 (if J)} cut by the linear conditions in ``extra``."""
    X, syms = unknown_matrix(n, "x")
    eqs = []
    if J is not None:
        eqs += list(X.T * J + J * X)
    for cond in extra:
        eqs += list(cond(X))
    return [sp.Matrix(n, n, v) for v in solve_space(eqs, syms)]


def coords(X, basis):
    n = X.shape[0]
    c = sp.symbols(f"c0:{len(basis)}")
    S = sum((ci * B for ci, B in zip(c, basis)), sp.zeros(n, n))
    sol = sp.solve(list(S - X), c, dict=True)
    assert sol, "not in span"
    return [sol[0].get(ci, 0) for ci in c]


def centraliser(parts, kind, rng):
    n = sum(parts)
    E = jordan_e(parts)
    J = None if kind == "GL" else random_form(parts, 1 if kind == "SO" else -1, rng)
    ge = algebra_basis(n, J, [lambda X: E * X - X * E])
    return E, J, ge


def structure(ge):
    table = {}
    for a, b in itertools.combinations(range(len(ge)), 2):
        table[(a, b)] = coords(ge[a] * ge[b] - ge[b] * ge[a], ge)
    return table


def skew_rank(ge, table, alpha):
    d = len(ge)
    B = sp.zeros(d, d)
    for (a, b), v in table.items():
        val = sum(x * y for x, y in zip(alpha, v))
        B[a, b], B[b, a] = val, -val
    return B.rank()


def centre_dim(ge, table):
    d = len(ge)
    rows = []
    for a in range(d):
        for c in range(d):
            row = []
            for b in range(d):
                if a == b:
                    row.append(0)
                elif a < b:
                    row.append(table[(a, b)][c])
                else:
                    row.append(-table[(b, a)][c])
            rows.append(row)
    return d - sp.Matrix(rows).rank()


def slice_invariants(parts, kind, rng, keys):
    """Lowest-degree parts of Δ_ℓ on e + g_f, written in coordinates dual to g_e."""
    n = sum(parts)
    E, J, ge = centraliser(parts, kind, rng)
    H = h_diag(parts)
    F, syms = unknown_matrix(n, "f")
    eqs = list(E * F - F * E - H) + list(H * F - F * H + 2 * F)
    if J is not None:
        eqs += list(F.T * J + J * F)
    sol = sp.solve(eqs, syms, dict=True)[0]
    F = F.subs(sol).subs({s: 0 for s in syms})
    gf = algebra_basis(n, J, [lambda X: F * X - X * F])
    G = sp.Matrix([[(A * B).trace() for B in gf] for A in ge])
    Ginv = G.inv()
    dual = [sum((Ginv[b, a] * gf[b] for b in range(len(gf))), sp.zeros(n, n)) for a in range(len(ge))]
    t = sp.symbols(f"t0:{len(ge)}")
    M = E + sum((ti * D for ti, D in zip(t, dual)), sp.zeros(n, n))
    lam = sp.Symbol("lam")
    cp = sp.Poly((lam * sp.eye(n) - M).det(method="berkowitz").expand(), lam)
    out = []
    for ell in keys:
        coeff = sp.expand((-1) ** ell * cp.coeff_monomial(lam ** (n - ell)))
        p = sp.Poly(coeff, *t)
        low = min(sum(m) for m in p.monoms())
        part = sum(c * sp.prod([x ** k for x, k in zip(t, m)]) for m, c in p.terms() if sum(m) == low)
        out.append((ell, low, sp.expand(part)))
    return ge, t, out


def groebner_dimension(polys, gens):
    G = sp.groebner(polys, *gens, order="grevlex")
    lms = [sp.Poly(g, *gens).monoms(order="grevlex")[0] for g in G.exprs]
    best = 0
    for r in range(len(gens), -1, -1):
        for S in itertools.combinations(range(len(gens)), r):
            if all(any(m[k] and k not in S for k in range(len(gens))) for m in lms):
                return r
    return best


def main():
    rng = random.Random(2024)
    print("== centraliser dimensions")
    for parts, kind in [((4, 2), "GL"), ((2, 1, 1), "GL"), ((4, 2), "SP"), ((3, 2, 2), "SO"),
                        ((5, 3), "SO"), ((2,), "SP")]:
        _, _, ge = centraliser(parts, kind, rng)
        print(parts, kind, len(ge))
    print("== centre dimensions")
    for parts, kind in [((4, 2), "GL"), ((5, 3), "SO"), ((4, 2), "SP"), ((3,), "GL")]:
        _, _, ge = centraliser(parts, kind, rng)
        print(parts, kind, centre_dim(ge, structure(ge)))
    print("== index (min corank over 5 random functionals)")
    for parts, kind in [((3, 2, 1), "GL"), ((4, 2), "SP"), ((3, 2, 2), "SO")]:
        _, _, ge = centraliser(parts, kind, rng)
        table = structure(ge)
        d = len(ge)
        print(parts, kind, min(d - skew_rank(ge, table, [rng.randint(-50, 50) for _ in range(d)])
                               for _ in range(5)))
    print("== invariant degrees")
    for parts, kind, keys in [((4, 2), "GL", range(1, 7)), ((2, 1), "GL", range(1, 4)),
                              ((4, 2), "SP", (2, 4, 6))]:
        _, _, inv = slice_invariants(parts, kind, rng, keys)
        print(parts, kind, [m for _, m, _ in inv])
    print("== codimension of the ideal of Δ_{2i}")
    for parts, kind in [((2, 2), "SP"), ((3, 1), "SO"), ((4, 2), "SP"), ((3, 3), "SO")]:
        rk = sum(parts) // 2
        ge, t, inv = slice_invariants(parts, kind, rng, [2 * i for i in range(1, rk + 1)])
        print(parts, kind, len(t) - groebner_dimension([p for _, _, p in inv], t))
    print("== shift family Jacobian rank, GL (2,1)")
    ge, t, inv = slice_invariants((2, 1), "GL", rng, range(1, 4))
    a = [rng.randint(-20, 20) for _ in t]
    gens = []
    for _, _, p in inv:
        cur = p
        while sp.Poly(cur, *t).total_degree() > 0:
            gens.append(cur)
            cur = sp.expand(sum(ai * sp.diff(cur, ti) for ai, ti in zip(a, t)))
    pt = {ti: rng.randint(-50, 50) for ti in t}
    Jac = sp.Matrix([[sp.diff(g, ti).subs(pt) for ti in t] for g in gens])
    print(len(gens), Jac.rank())
    print("== exact linear algebra")
    M6 = [[rng.randint(-4, 4) for _ in range(6)] for _ in range(6)]
    print(M6, sp.Matrix(M6).det())
    M4 = [[rng.randint(-5, 5) for _ in range(4)] for _ in range(4)]
    lam = sp.Symbol("lam")
    cp = sp.Poly((lam * sp.eye(4) - sp.Matrix(M4)).det(method="bareiss"), lam)
    print(M4, [(-1) ** k * cp.coeff_monomial(lam ** (4 - k)) for k in range(1, 5)])
    A6 = sp.zeros(6, 6)
    for i, j in itertools.combinations(range(6), 2):
        A6[i, j] = rng.randint(-4, 4)
        A6[j, i] = -A6[i, j]
    print(A6.tolist(), A6.det())


if __name__ == "__main__":
    main()
