"""Generate the FCIDUMP fixtures shipped under fixtures/.

Run from this directory:  python3 generate.py ../../fixtures
"""

import math
import os
import sys
import time

import numpy as np

import mdhf

ANG = mdhf.ANGSTROM


def sidecar(path, *, molecule, basis, geometry_note, n_spatial, n_elec,
            n_frozen, hf_total, orbital_energies):
    lines = [
        "# Fixture sidecar metadata. Energies in Hartree, lengths in Angstrom.",
        f'molecule = "{molecule}"',
        f'basis = "{basis}"',
        f'geometry = "{geometry_note}"',
        f"n_spatial = {n_spatial}",
        f"n_electrons = {n_elec}",
        f"n_frozen_spatial = {n_frozen}",
        f"hf_total_energy = {hf_total:.12f}",
        "orbital_energies = [" +
        ", ".join(f"{e:.12f}" for e in orbital_energies) + "]",
        'generator = "tools/fixture_gen (McMurchie-Davidson RHF, DIIS)"',
    ]
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")


def run(atoms, basis, n_elec_total, guess_dm=None):
    funcs = mdhf.build_basis(atoms, basis)
    S, T, V = mdhf.one_electron(funcs, atoms)
    eri = mdhf.two_electron(funcs)
    enuc = mdhf.nuclear_repulsion(atoms)
    e_elec, C, mo_e, dm = mdhf.rhf(S, T, V, eri, n_elec_total, guess_dm=guess_dm)
    h_mo, eri_mo = mdhf.mo_integrals(T + V, eri, C)
    return enuc, e_elec + enuc, h_mo, eri_mo, mo_e, dm


def emit(outdir, stem, *, enuc, hf_total, h_mo, eri_mo, mo_e, n_frozen,
         n_active, n_act_elec, molecule, basis_name, geom):
    if n_frozen == 0 and n_active == h_mo.shape[0]:
        e_core, h_eff, eri_act = enuc, h_mo, eri_mo
    else:
        ec, h_eff, eri_act = mdhf.freeze_core(h_mo, eri_mo, n_frozen, n_active)
        e_core = ec + enuc
    mdhf.write_fcidump(os.path.join(outdir, stem + ".fcidump"),
                       h_eff, eri_act, e_core, n_act_elec)
    sidecar(os.path.join(outdir, stem + ".meta.toml"),
            molecule=molecule, basis=basis_name, geometry_note=geom,
            n_spatial=n_active, n_elec=n_act_elec, n_frozen=n_frozen,
            hf_total=hf_total,
            orbital_energies=mo_e[n_frozen:n_frozen + n_active])
    print(f"  wrote {stem}  (HF {hf_total:.6f})", flush=True)


def main(outdir):
    os.makedirs(outdir, exist_ok=True)

    # --- H2 / STO-3G, several bond lengths
    for R in (0.500, 0.735, 1.000, 1.500):
        atoms = [("H", (0, 0, 0)), ("H", (0, 0, R * ANG))]
        enuc, hf, h_mo, eri_mo, mo_e, _ = run(atoms, mdhf.STO3G, 2)
        emit(outdir, f"h2_sto3g_{R:.3f}", enuc=enuc, hf_total=hf, h_mo=h_mo,
             eri_mo=eri_mo, mo_e=mo_e, n_frozen=0, n_active=2, n_act_elec=2,
             molecule="H2", basis_name="STO-3G", geom=f"R(H-H) = {R:.3f} A")

    # --- H2 / 6-31G at 4.0 A
    atoms = [("H", (0, 0, 0)), ("H", (0, 0, 4.0 * ANG))]
    enuc, hf, h_mo, eri_mo, mo_e, _ = run(atoms, mdhf.G631, 2)
    emit(outdir, "h2_631g_4.000", enuc=enuc, hf_total=hf, h_mo=h_mo,
         eri_mo=eri_mo, mo_e=mo_e, n_frozen=0, n_active=4, n_act_elec=2,
         molecule="H2", basis_name="6-31G", geom="R(H-H) = 4.000 A")

    # --- LiH / STO-3G at 2.5 A, frozen Li 1s -> (10,2) active space
    atoms = [("Li", (0, 0, 0)), ("H", (0, 0, 2.5 * ANG))]
    enuc, hf, h_mo, eri_mo, mo_e, _ = run(atoms, mdhf.STO3G, 4)
    emit(outdir, "lih_sto3g_2.500", enuc=enuc, hf_total=hf, h_mo=h_mo,
         eri_mo=eri_mo, mo_e=mo_e, n_frozen=1, n_active=5, n_act_elec=2,
         molecule="LiH", basis_name="STO-3G", geom="R(Li-H) = 2.500 A")

    # --- C2H4 / STO-3G, (16,6) active space (freeze 5 lowest)
    rcc, rch, ang_hcc = 1.339 * ANG, 1.087 * ANG, math.radians(121.3)
    hx, hz = rch * math.sin(ang_hcc), rch * math.cos(ang_hcc)
    atoms = [("C", (0, 0, rcc / 2)), ("C", (0, 0, -rcc / 2)),
             ("H", (hx, 0, rcc / 2 - hz)), ("H", (-hx, 0, rcc / 2 - hz)),
             ("H", (hx, 0, -rcc / 2 + hz)), ("H", (-hx, 0, -rcc / 2 + hz))]
    enuc, hf, h_mo, eri_mo, mo_e, _ = run(atoms, mdhf.STO3G, 16)
    emit(outdir, "c2h4_sto3g_16_6", enuc=enuc, hf_total=hf, h_mo=h_mo,
         eri_mo=eri_mo, mo_e=mo_e, n_frozen=5, n_active=8, n_act_elec=6,
         molecule="C2H4", basis_name="STO-3G",
         geom="planar, R(C-C)=1.339 A, R(C-H)=1.087 A, HCC=121.3 deg")

    # --- C2 / 6-31G grid, (16,4) and (20,4) active spaces (freeze 4 lowest)
    dm = None
    for R in (0.9, 1.2, 1.5, 1.8, 2.1, 2.4, 2.7, 3.0):
        t0 = time.time()
        atoms = [("C", (0, 0, 0)), ("C", (0, 0, R * ANG))]
        enuc, hf, h_mo, eri_mo, mo_e, dm = run(atoms, mdhf.G631, 12,
                                               guess_dm=dm)
        for n_active, tag in ((8, "16_4"), (10, "20_4")):
            emit(outdir, f"c2_631g_{tag}_r{R:.3f}", enuc=enuc, hf_total=hf,
                 h_mo=h_mo, eri_mo=eri_mo, mo_e=mo_e, n_frozen=4,
                 n_active=n_active, n_act_elec=4, molecule="C2",
                 basis_name="6-31G", geom=f"R(C-C) = {R:.3f} A")
        print(f"  C2 R={R}: {time.time()-t0:.0f}s", flush=True)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "../../fixtures")
