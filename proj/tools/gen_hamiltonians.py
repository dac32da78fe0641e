#!/usr/bin/env python3
# Copyright 2026 The BOPT-VQE Authors

# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at

#     http://www.apache.org/licenses/LICENSE-2.0

# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerate the committed STO-3G Jordan-Wigner Hamiltonians under data/.

Requires pyscf and openfermion. Spin orbitals are interleaved (alpha, beta per
spatial orbital), so the Hartree-Fock occupation is the leading 1 bits.
"""
import sys

import numpy as np
import openfermion as of
from pyscf import ao2mo, fci, gto, scf


def build(atom, charge, label, geometry_note):
    mol = gto.M(atom=atom, basis="sto-3g", charge=charge, spin=0, unit="Angstrom")
    mf = scf.RHF(mol)
    mf.conv_tol = 1e-12
    mf.kernel()
    c = mf.mo_coeff
    h1 = c.T @ mf.get_hcore() @ c
    norb = h1.shape[0]
    eri = ao2mo.restore(1, ao2mo.kernel(mol, c), norb)
    # openfermion wants chemist (pq|rs) reordered to physicist <pr|sq> layout
    h2 = np.asarray(eri.transpose(0, 2, 3, 1), order="C")
    one, two = of.chem.molecular_data.spinorb_from_spatial(h1, h2)
    op = of.InteractionOperator(mol.energy_nuc(), one, 0.5 * two)
    qop = of.jordan_wigner(of.get_fermion_operator(op))
    qop.compress(1e-12)
    nq = 2 * norb
    efci = fci.FCI(mf).kernel()[0]
    # The ansatz does not conserve particle number, so also record the
    # lowest eigenvalue over every sector.
    efock = float(np.linalg.eigvalsh(of.get_sparse_operator(qop, nq).toarray())[0])

    lines = [
        f"# {label} STO-3G, Jordan-Wigner, interleaved spin orbitals ({nq} qubits)",
        f"# geometry: {geometry_note}",
        f"# RHF energy {mf.e_tot:.12f} Ha, FCI energy {efci:.12f} Ha",
        f"# lowest eigenvalue over all particle-number sectors {efock:.12f} Ha",
        "# format: <coefficient> <pauli string>, qubit 0 leftmost",
    ]
    for term, coeff in sorted(qop.terms.items(), key=lambda kv: (len(kv[0]), kv[0])):
        s = ["I"] * nq
        for q, p in term:
            s[q] = p
        assert abs(coeff.imag) < 1e-12
        lines.append(f"{coeff.real: .16e} {''.join(s)}")
    return "\n".join(lines) + "\n"


def main(outdir):
    h2 = build("H 0 0 0; H 0 0 0.7414", 0, "H2", "H-H 0.7414 Angstrom")
    r = 0.9
    hgt = r * np.sqrt(3) / 2
    h3 = build(f"H 0 0 0; H {r} 0 0; H {r / 2} {hgt} 0", 1, "H3+",
               f"equilateral triangle, H-H {r} Angstrom")
    open(f"{outdir}/h2_sto3g_jw.ham", "w").write(h2)
    open(f"{outdir}/h3plus_sto3g_jw.ham", "w").write(h3)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data")
