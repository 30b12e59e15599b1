"""Independent oracle for the frozen Z1/B1 values.

Works with sympy on matrix Lie algebras (the matrix commutator, not the
vector-field bracket; the two structures are isomorphic via x -> -x, so all
dimensions agree). Run with `python3 oracles/ce_oracle.py`; it asserts the
values that the Rust test-suite freezes.
"""

import sympy as sp


def sl_basis(n):
    basis = []
    for i in range(n - 1):
        m = sp.zeros(n)
        m[i, i] = 1
        m[i + 1, i + 1] = -1
        basis.append(m)
    for i in range(n):
        for j in range(n):
            if i != j:
                m = sp.zeros(n)
                m[i, j] = 1
                basis.append(m)
    return basis


def structure(basis):
    """Structure constants and the projector onto basis coordinates."""
    d = len(basis)
    a = sp.Matrix([list(b) for b in basis]).T
    proj = (a.T * a).inv() * a.T
    consts = {}
    for i in range(d):
        for j in range(d):
            comm = basis[i] * basis[j] - basis[j] * basis[i]
            consts[i, j] = list(proj * sp.Matrix(list(comm)))
    return consts, proj


def rigidity(l_basis, g_mats):
    """(dim Z1, dim B1) of g with coefficients in L/g."""
    d = len(l_basis)
    consts, proj = structure(l_basis)
    g = sp.Matrix([list(proj * sp.Matrix(list(x))) for x in g_mats])
    rr, piv = g.rref()
    nonpiv = [k for k in range(d) if k not in piv]
    gd, m = len(g_mats), len(nonpiv)

    def br(u, v):
        out = [0] * d
        for i in range(d):
            if u[i] == 0:
                continue
            for j in range(d):
                if v[j] == 0:
                    continue
                for k in range(d):
                    out[k] += u[i] * v[j] * consts[i, j][k]
        return out

    act = []
    for a in range(gd):
        am = sp.zeros(m)
        for ci, col in enumerate(nonpiv):
            e = [0] * d
            e[col] = 1
            w = br(list(g.row(a)), e)
            for ri, r in enumerate(nonpiv):
                am[ri, ci] = w[r] - sum(w[piv[p]] * rr[p, r] for p in range(len(piv)))
        act.append(am)
    gc = {}
    for a in range(gd):
        for b in range(gd):
            w = sp.Matrix(br(list(g.row(a)), list(g.row(b))))
            (sol,) = sp.linsolve((g.T, w))
            gc[a, b] = list(sol)
    d0 = sp.zeros(gd * m, m)
    for a in range(gd):
        d0[a * m:(a + 1) * m, :] = act[a]
    pairs = [(a, b) for a in range(gd) for b in range(a + 1, gd)]
    d1 = sp.zeros(len(pairs) * m, gd * m)
    for pi, (a, b) in enumerate(pairs):
        # df(xa, xb) = xa f(xb) - xb f(xa) - f([xa, xb])
        d1[pi * m:(pi + 1) * m, b * m:(b + 1) * m] += act[a]
        d1[pi * m:(pi + 1) * m, a * m:(a + 1) * m] -= act[b]
        for k in range(gd):
            d1[pi * m:(pi + 1) * m, k * m:(k + 1) * m] -= gc[a, b][k] * sp.eye(m)
    assert (d1 * d0).is_zero_matrix
    return gd * m - d1.rank(), d0.rank()


def familia1(n, t):
    def mat(entries):
        m = sp.zeros(n)
        for (i, j), v in entries.items():
            m[i, j] = v
        return m - m.trace() / n * sp.eye(n)

    x1 = mat({(1, 1): 1, (1, 2): t, (2, 2): 1, (4, 4): 1, (4, 5): t, (5, 5): 1})
    x2 = mat({(1, 0): -1, (4, 3): -1})
    x3 = mat({(1, 0): -t, (2, 0): -1, (4, 3): -t, (5, 3): -1})
    return [x1, x2, x3]


def sym4():
    m = 4
    h = sp.diag(*[m - 2 * k for k in range(m + 1)])
    e = sp.zeros(m + 1)
    f = sp.zeros(m + 1)
    for k in range(1, m + 1):
        e[k - 1, k] = k
    for k in range(m):
        f[k + 1, k] = m - k
    assert e * f - f * e == h
    return h, e, f


def invariant_form(mats):
    syms = sp.symbols("b0:15")
    b = sp.zeros(5)
    idx = 0
    for i in range(5):
        for j in range(i, 5):
            b[i, j] = syms[idx]
            b[j, i] = syms[idx]
            idx += 1
    eqs = []
    for x in mats:
        eqs += list(x.T * b + b * x)
    sol = sp.solve(eqs, syms, dict=True)[0]
    bv = b.subs(sol)
    free = list(bv.free_symbols)
    assert len(free) == 1
    return bv.subs(free[0], 1)


def so_basis(b):
    a = sp.symbols("a0:25")
    am = sp.Matrix(5, 5, a)
    (gen,) = sp.linsolve(list(am.T * b + b * am), a)
    free = sorted(set().union(*[sp.sympify(x).free_symbols for x in gen]), key=str)
    return [
        sp.Matrix(5, 5, [sp.sympify(x).subs({u: (1 if u == s else 0) for u in free}) for x in gen])
        for s in free
    ]


if __name__ == "__main__":
    assert rigidity(sl_basis(6), familia1(6, 1)) == (32, 28)
    h, e, f = sym4()
    so5 = so_basis(invariant_form([h, e, f]))
    assert len(so5) == 10
    assert rigidity(so5, [h, e]) == (8, 8)
    assert rigidity(sl_basis(4), [h[:4, :4], e[:4, :4]]) == (13, 13)
    assert rigidity(sl_basis(5), [h, e, f]) == (21, 21)
    print("oracle values confirmed")
