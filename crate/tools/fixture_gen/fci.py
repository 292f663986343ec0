"""Explicit second-quantized FCI over spin-orbital occupation bitstrings.

Independent of the Rust code; used to validate fixtures before check-in.
Spin-orbital convention: bit p -> spatial p//2, spin p%2 (0 = alpha),
bit 0 is the lowest-energy orbital.
"""

from itertools import combinations

import numpy as np


def basis_states(m_spin, n_elec):
    """All weight-n occupation tuples over m_spin bits, lexicographic by
    bit pattern (bit 0 = most significant textual position)."""
    states = []
    for occ in combinations(range(m_spin), n_elec):
        states.append(frozenset(occ))
    # sort by textual bitstring (bit 0 leftmost)
    states.sort(key=lambda s: tuple(1 if i in s else 0 for i in range(m_spin)))
    return states


def annihilate(state, p):
    if p not in state:
        return None, 0
    sign = (-1) ** sum(1 for q in state if q < p)
    return state - {p}, sign


def create(state, p):
    if p in state:
        return None, 0
    sign = (-1) ** sum(1 for q in state if q < p)
    return state | {p}, sign


def fci_matrix(h_mo, eri_mo, e_core, m_spin, states):
    n_sp = m_spin // 2
    dim = len(states)
    idx = {s: i for i, s in enumerate(states)}
    H = np.zeros((dim, dim))
    for ci, ket in enumerate(states):
        # one-body: sum_{pq,sigma} h_pq a+_{p sigma} a_{q sigma}
        for q_sp in range(n_sp):
            for sigma in range(2):
                q = 2 * q_sp + sigma
                s1, sg1 = annihilate(ket, q)
                if s1 is None:
                    continue
                for p_sp in range(n_sp):
                    if abs(h_mo[p_sp, q_sp]) < 1e-15:
                        continue
                    p = 2 * p_sp + sigma
                    s2, sg2 = create(s1, p)
                    if s2 is None:
                        continue
                    H[idx[s2], ci] += h_mo[p_sp, q_sp] * sg1 * sg2
        # two-body: 1/2 sum_{pqrs,sig,tau} (pq|rs) a+_{p sig} a+_{r tau} a_{s tau} a_{q sig}
        for q_sp in range(n_sp):
            for sigma in range(2):
                q = 2 * q_sp + sigma
                s1, sg1 = annihilate(ket, q)
                if s1 is None:
                    continue
                for s_sp in range(n_sp):
                    for tau in range(2):
                        s_ = 2 * s_sp + tau
                        s2, sg2 = annihilate(s1, s_)
                        if s2 is None:
                            continue
                        for r_sp in range(n_sp):
                            r = 2 * r_sp + tau
                            s3, sg3 = create(s2, r)
                            if s3 is None:
                                continue
                            for p_sp in range(n_sp):
                                v = eri_mo[p_sp, q_sp, r_sp, s_sp]
                                if abs(v) < 1e-15:
                                    continue
                                p = 2 * p_sp + sigma
                                s4, sg4 = create(s3, p)
                                if s4 is None:
                                    continue
                                H[idx[s4], ci] += 0.5 * v * sg1 * sg2 * sg3 * sg4
    H += e_core * np.eye(dim)
    return H


def fci_ground_energy(h_mo, eri_mo, e_core, n_elec):
    m_spin = 2 * h_mo.shape[0]
    states = basis_states(m_spin, n_elec)
    H = fci_matrix(h_mo, eri_mo, e_core, m_spin, states)
    w = np.linalg.eigvalsh(H)
    return w[0]
