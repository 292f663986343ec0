"""Minimal restricted Hartree-Fock over contracted Gaussians (s and p shells).

McMurchie-Davidson integrals, DIIS-accelerated SCF, MO transformation,
frozen-core active-space reduction, and FCIDUMP output.  Used offline to
produce the integral fixtures shipped with the repository.
"""

import numpy as np
from numpy import pi, exp, sqrt
from scipy.special import hyp1f1

ANGSTROM = 1.0 / 0.52917721092  # to Bohr

# ---------------------------------------------------------------------------
# Basis set data (EMSL exchange values)

STO3G = {
    "H": [("s", [3.42525091, 0.62391373, 0.16885540],
           [0.15432897, 0.53532814, 0.44463454])],
    "Li": [("s", [16.11957475, 2.936200663, 0.794650487],
            [0.1543289673, 0.5353281423, 0.4446345422]),
           ("sp", [0.6362897469, 0.1478600533, 0.0480886784],
            [-0.09996722919, 0.3995128261, 0.7001154689],
            [0.1559162750, 0.6076837186, 0.3919573931])],
    "C": [("s", [71.61683735, 13.04509632, 3.530512160],
           [0.1543289673, 0.5353281423, 0.4446345422]),
          ("sp", [2.941249355, 0.6834830964, 0.2222899159],
           [-0.09996722919, 0.3995128261, 0.7001154689],
           [0.1559162750, 0.6076837186, 0.3919573931])],
}

G631 = {
    "H": [("s", [18.73113696, 2.825394365, 0.6401216923],
           [0.03349460434, 0.2347269535, 0.8137573261]),
          ("s", [0.1612777588], [1.0])],
    "C": [("s", [3047.524880, 457.3695180, 103.9486900, 29.21015530,
                 9.286662960, 3.163926960],
           [0.0018347000, 0.0140373000, 0.0688426000, 0.2321844000,
            0.4679413000, 0.3623120000]),
          ("sp", [7.868272350, 1.881288540, 0.5442492580],
           [-0.1193324000, -0.1608542000, 1.1434564000],
           [0.0689991000, 0.3164240000, 0.7443083000]),
          ("sp", [0.1687144782], [1.0], [1.0])],
}

Z = {"H": 1, "Li": 3, "C": 6}


class Primitive:
    __slots__ = ("alpha", "coef", "lmn", "center", "norm")

    def __init__(self, alpha, coef, lmn, center):
        self.alpha = alpha
        self.coef = coef
        self.lmn = lmn
        self.center = np.asarray(center, float)
        l, m, n = lmn
        # primitive normalization
        self.norm = (2 * alpha / pi) ** 0.75 * (4 * alpha) ** ((l + m + n) / 2) \
            / sqrt(dfact(2 * l - 1) * dfact(2 * m - 1) * dfact(2 * n - 1))


def dfact(n):
    if n <= 0:
        return 1.0
    r = 1.0
    while n > 1:
        r *= n
        n -= 2
    return r


class Contracted:
    def __init__(self, prims):
        self.prims = prims
        # normalize contraction
        s = 0.0
        for a in prims:
            for b in prims:
                s += a.coef * b.coef * a.norm * b.norm * _overlap_prim(a, b)
        self.nc = 1.0 / sqrt(s)


def build_basis(atoms, basis):
    """atoms: list of (symbol, xyz_bohr). Returns list of Contracted."""
    funcs = []
    for sym, xyz in atoms:
        for shell in basis[sym]:
            kind = shell[0]
            exps = shell[1]
            if kind == "s":
                coefs = shell[2]
                prims = [Primitive(a, c, (0, 0, 0), xyz)
                         for a, c in zip(exps, coefs)]
                funcs.append(Contracted(prims))
            elif kind == "sp":
                scoef, pcoef = shell[2], shell[3]
                prims = [Primitive(a, c, (0, 0, 0), xyz)
                         for a, c in zip(exps, scoef)]
                funcs.append(Contracted(prims))
                for lmn in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]:
                    prims = [Primitive(a, c, lmn, xyz)
                             for a, c in zip(exps, pcoef)]
                    funcs.append(Contracted(prims))
    return funcs


# ---------------------------------------------------------------------------
# McMurchie-Davidson machinery

def E_herm(i, j, t, Qx, a, b):
    """Hermite expansion coefficient E_t^{ij}."""
    p = a + b
    q = a * b / p
    if t < 0 or t > i + j:
        return 0.0
    if i == j == t == 0:
        return exp(-q * Qx * Qx)
    if j == 0:
        return (1 / (2 * p)) * E_herm(i - 1, j, t - 1, Qx, a, b) \
            - (q * Qx / a) * E_herm(i - 1, j, t, Qx, a, b) \
            + (t + 1) * E_herm(i - 1, j, t + 1, Qx, a, b)
    return (1 / (2 * p)) * E_herm(i, j - 1, t - 1, Qx, a, b) \
        + (q * Qx / b) * E_herm(i, j - 1, t, Qx, a, b) \
        + (t + 1) * E_herm(i, j - 1, t + 1, Qx, a, b)


def boys(n, T):
    return hyp1f1(n + 0.5, n + 1.5, -T) / (2.0 * n + 1.0)


def R_herm(t, u, v, n, p, PCx, PCy, PCz, RPC):
    """Hermite Coulomb integral R_{tuv}^n."""
    val = 0.0
    if t == u == v == 0:
        return (-2 * p) ** n * boys(n, p * RPC * RPC)
    if t == u == 0:
        if v > 1:
            val += (v - 1) * R_herm(t, u, v - 2, n + 1, p, PCx, PCy, PCz, RPC)
        val += PCz * R_herm(t, u, v - 1, n + 1, p, PCx, PCy, PCz, RPC)
        return val
    if t == 0:
        if u > 1:
            val += (u - 1) * R_herm(t, u - 2, v, n + 1, p, PCx, PCy, PCz, RPC)
        val += PCy * R_herm(t, u - 1, v, n + 1, p, PCx, PCy, PCz, RPC)
        return val
    if t > 1:
        val += (t - 1) * R_herm(t - 2, u, v, n + 1, p, PCx, PCy, PCz, RPC)
    val += PCx * R_herm(t - 1, u, v, n + 1, p, PCx, PCy, PCz, RPC)
    return val


def _overlap_prim(pa, pb):
    a, b = pa.alpha, pb.alpha
    la, lb = pa.lmn, pb.lmn
    s = 1.0
    for d in range(3):
        s *= E_herm(la[d], lb[d], 0, pa.center[d] - pb.center[d], a, b)
    return s * (pi / (a + b)) ** 1.5


def _kinetic_prim(pa, pb):
    a, b = pa.alpha, pb.alpha
    l2, m2, n2 = pb.lmn
    term0 = b * (2 * (l2 + m2 + n2) + 3) * _overlap_prim(pa, pb)
    term1 = -2 * b * b * (
        _overlap_prim(pa, _shift(pb, 0, 2)) +
        _overlap_prim(pa, _shift(pb, 1, 2)) +
        _overlap_prim(pa, _shift(pb, 2, 2)))
    term2 = -0.5 * (l2 * (l2 - 1) * _overlap_prim(pa, _shift(pb, 0, -2)) +
                    m2 * (m2 - 1) * _overlap_prim(pa, _shift(pb, 1, -2)) +
                    n2 * (n2 - 1) * _overlap_prim(pa, _shift(pb, 2, -2)))
    return term0 + term1 + term2


def _shift(p, d, k):
    lmn = list(p.lmn)
    lmn[d] += k
    if lmn[d] < 0:
        lmn[d] = 0  # coefficient multiplying it is zero anyway
    q = Primitive.__new__(Primitive)
    q.alpha = p.alpha
    q.coef = p.coef
    q.lmn = tuple(lmn)
    q.center = p.center
    q.norm = p.norm
    return q


def _nuclear_prim(pa, pb, C):
    a, b = pa.alpha, pb.alpha
    p = a + b
    P = (a * pa.center + b * pb.center) / p
    PC = P - C
    RPC = np.linalg.norm(PC)
    la, lb = pa.lmn, pb.lmn
    val = 0.0
    for t in range(la[0] + lb[0] + 1):
        Ex = E_herm(la[0], lb[0], t, pa.center[0] - pb.center[0], a, b)
        if Ex == 0.0:
            continue
        for u in range(la[1] + lb[1] + 1):
            Ey = E_herm(la[1], lb[1], u, pa.center[1] - pb.center[1], a, b)
            if Ey == 0.0:
                continue
            for v in range(la[2] + lb[2] + 1):
                Ez = E_herm(la[2], lb[2], v, pa.center[2] - pb.center[2], a, b)
                if Ez == 0.0:
                    continue
                val += Ex * Ey * Ez * R_herm(t, u, v, 0, p, PC[0], PC[1], PC[2], RPC)
    return 2 * pi / p * val


def _eri_prim(pa, pb, pc, pd):
    a, b, c, d = pa.alpha, pb.alpha, pc.alpha, pd.alpha
    p = a + b
    q = c + d
    alpha = p * q / (p + q)
    P = (a * pa.center + b * pb.center) / p
    Q = (c * pc.center + d * pd.center) / q
    PQ = P - Q
    RPQ = np.linalg.norm(PQ)
    la, lb, lc, ld = pa.lmn, pb.lmn, pc.lmn, pd.lmn

    Ex1 = [E_herm(la[0], lb[0], t, pa.center[0] - pb.center[0], a, b)
           for t in range(la[0] + lb[0] + 1)]
    Ey1 = [E_herm(la[1], lb[1], u, pa.center[1] - pb.center[1], a, b)
           for u in range(la[1] + lb[1] + 1)]
    Ez1 = [E_herm(la[2], lb[2], v, pa.center[2] - pb.center[2], a, b)
           for v in range(la[2] + lb[2] + 1)]
    Ex2 = [E_herm(lc[0], ld[0], t, pc.center[0] - pd.center[0], c, d)
           for t in range(lc[0] + ld[0] + 1)]
    Ey2 = [E_herm(lc[1], ld[1], u, pc.center[1] - pd.center[1], c, d)
           for u in range(lc[1] + ld[1] + 1)]
    Ez2 = [E_herm(lc[2], ld[2], v, pc.center[2] - pd.center[2], c, d)
           for v in range(lc[2] + ld[2] + 1)]

    val = 0.0
    for t, ex1 in enumerate(Ex1):
        if ex1 == 0.0:
            continue
        for u, ey1 in enumerate(Ey1):
            if ey1 == 0.0:
                continue
            for v, ez1 in enumerate(Ez1):
                if ez1 == 0.0:
                    continue
                for tt, ex2 in enumerate(Ex2):
                    if ex2 == 0.0:
                        continue
                    for uu, ey2 in enumerate(Ey2):
                        if ey2 == 0.0:
                            continue
                        for vv, ez2 in enumerate(Ez2):
                            if ez2 == 0.0:
                                continue
                            r = R_herm(t + tt, u + uu, v + vv, 0, alpha,
                                       PQ[0], PQ[1], PQ[2], RPQ)
                            sign = (-1.0) ** (tt + uu + vv)
                            val += ex1 * ey1 * ez1 * ex2 * ey2 * ez2 * sign * r
    return val * 2 * pi ** 2.5 / (p * q * sqrt(p + q))


def _contract2(fa, fb, kernel, *extra):
    v = 0.0
    for pa in fa.prims:
        for pb in fb.prims:
            v += pa.coef * pb.coef * pa.norm * pb.norm * kernel(pa, pb, *extra)
    return v * fa.nc * fb.nc


def one_electron(funcs, atoms):
    n = len(funcs)
    S = np.zeros((n, n))
    T = np.zeros((n, n))
    V = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1):
            S[i, j] = S[j, i] = _contract2(funcs[i], funcs[j], _overlap_prim)
            T[i, j] = T[j, i] = _contract2(funcs[i], funcs[j], _kinetic_prim)
            v = 0.0
            for sym, xyz in atoms:
                v -= Z[sym] * _contract2(funcs[i], funcs[j], _nuclear_prim,
                                         np.asarray(xyz, float))
            V[i, j] = V[j, i] = v
    return S, T, V


def two_electron(funcs):
    n = len(funcs)
    eri = np.zeros((n, n, n, n))
    done = {}
    for i in range(n):
        for j in range(i + 1):
            for k in range(n):
                for l in range(k + 1):
                    ij = i * (i + 1) // 2 + j
                    kl = k * (k + 1) // 2 + l
                    if ij < kl:
                        continue
                    v = 0.0
                    fa, fb, fc, fd = funcs[i], funcs[j], funcs[k], funcs[l]
                    for pa in fa.prims:
                        for pb in fb.prims:
                            for pc in fc.prims:
                                for pd in fd.prims:
                                    v += (pa.coef * pb.coef * pc.coef * pd.coef *
                                          pa.norm * pb.norm * pc.norm * pd.norm *
                                          _eri_prim(pa, pb, pc, pd))
                    v *= fa.nc * fb.nc * fc.nc * fd.nc
                    for (a, b, c, d) in [(i, j, k, l), (j, i, k, l), (i, j, l, k),
                                         (j, i, l, k), (k, l, i, j), (l, k, i, j),
                                         (k, l, j, i), (l, k, j, i)]:
                        eri[a, b, c, d] = v
    return eri


def nuclear_repulsion(atoms):
    e = 0.0
    for i, (si, xi) in enumerate(atoms):
        for j, (sj, xj) in enumerate(atoms):
            if j >= i:
                continue
            e += Z[si] * Z[sj] / np.linalg.norm(np.asarray(xi) - np.asarray(xj))
    return e


def rhf(S, T, V, eri, n_elec, max_iter=200, conv=1e-10, guess_dm=None):
    """Returns (e_elec, mo_coeff, mo_energy, dm)."""
    n = S.shape[0]
    hcore = T + V
    sval, svec = np.linalg.eigh(S)
    X = svec @ np.diag(sval ** -0.5) @ svec.T
    nocc = n_elec // 2

    if guess_dm is None:
        f = X.T @ hcore @ X
        e, c = np.linalg.eigh(f)
        C = X @ c
        dm = 2 * C[:, :nocc] @ C[:, :nocc].T
    else:
        dm = guess_dm

    fock_list, err_list = [], []
    e_old = 0.0
    for it in range(max_iter):
        J = np.einsum("pqrs,rs->pq", eri, dm)
        K = np.einsum("prqs,rs->pq", eri, dm)
        F = hcore + J - 0.5 * K

        # DIIS
        err = F @ dm @ S - S @ dm @ F
        fock_list.append(F)
        err_list.append(err)
        if len(fock_list) > 8:
            fock_list.pop(0)
            err_list.pop(0)
        if len(fock_list) > 1:
            m = len(fock_list)
            B = -np.ones((m + 1, m + 1))
            B[m, m] = 0.0
            for a in range(m):
                for b in range(m):
                    B[a, b] = np.sum(err_list[a] * err_list[b])
            rhs = np.zeros(m + 1)
            rhs[m] = -1.0
            try:
                w = np.linalg.solve(B, rhs)[:m]
                F = sum(wi * fi for wi, fi in zip(w, fock_list))
            except np.linalg.LinAlgError:
                pass

        f = X.T @ F @ X
        mo_e, c = np.linalg.eigh(f)
        C = X @ c
        dm = 2 * C[:, :nocc] @ C[:, :nocc].T
        J = np.einsum("pqrs,rs->pq", eri, dm)
        K = np.einsum("prqs,rs->pq", eri, dm)
        e_elec = np.sum(dm * hcore) + 0.5 * np.sum(dm * J) - 0.25 * np.sum(dm * K)
        if abs(e_elec - e_old) < conv and it > 2:
            break
        e_old = e_elec
    return e_elec, C, mo_e, dm


def mo_integrals(hcore, eri, C):
    h_mo = C.T @ hcore @ C
    eri_mo = np.einsum("pqrs,pi,qj,rk,sl->ijkl", eri, C, C, C, C, optimize=True)
    return h_mo, eri_mo


def freeze_core(h_mo, eri_mo, n_frozen, n_active):
    """Fold frozen doubly-occupied orbitals into core energy and an
    effective one-body term.  Active orbitals are [n_frozen, n_frozen+n_active)."""
    e_core = 0.0
    for i in range(n_frozen):
        e_core += 2 * h_mo[i, i]
        for j in range(n_frozen):
            e_core += 2 * eri_mo[i, i, j, j] - eri_mo[i, j, j, i]
    act = slice(n_frozen, n_frozen + n_active)
    h_eff = h_mo[act, act].copy()
    for p in range(n_active):
        for q in range(n_active):
            P, Q = n_frozen + p, n_frozen + q
            for i in range(n_frozen):
                h_eff[p, q] += 2 * eri_mo[P, Q, i, i] - eri_mo[P, i, i, Q]
    eri_act = eri_mo[act, act, act, act].copy()
    return e_core, h_eff, eri_act


def write_fcidump(path, h_mo, eri_mo, e_core, n_elec, thresh=1e-12):
    n = h_mo.shape[0]
    lines = [f"&FCI NORB={n},NELEC={n_elec},MS2=0,",
             " ORBSYM=" + "1," * n,
             " ISYM=1,",
             "&END"]
    for i in range(n):
        for j in range(i + 1):
            for k in range(i + 1):
                lmax = j + 1 if k == i else k + 1
                for l in range(lmax):
                    v = eri_mo[i, j, k, l]
                    if abs(v) > thresh:
                        lines.append(f"{v:23.16E} {i+1:4d} {j+1:4d} {k+1:4d} {l+1:4d}")
    for i in range(n):
        for j in range(i + 1):
            v = h_mo[i, j]
            if abs(v) > thresh:
                lines.append(f"{v:23.16E} {i+1:4d} {j+1:4d}    0    0")
    lines.append(f"{e_core:23.16E}    0    0    0    0")
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")
