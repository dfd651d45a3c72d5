#!/usr/bin/env python3
"""Regenerates the bundled scenario corpus under scenarios/.

Every matrix is exact (integers, halves, quarters, or exact unit complexes),
so all identity checks hold to machine precision.
"""
import itertools
import json
import os

OUT = os.path.join(os.path.dirname(__file__), "..", "scenarios")

I2 = [[1, 0], [0, 1]]
X = [[0, 1], [1, 0]]
Y = [[0, [0, -1]], [[0, 1], 0]]
Z = [[1, 0], [0, -1]]
ZERO2 = [[0, 0], [0, 0]]
P0 = [[1, 0], [0, 0]]
P1 = [[0, 0], [0, 1]]


def ident(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def diag(*entries):
    n = len(entries)
    return [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)]


def basis_proj(n, i):
    m = [[0] * n for _ in range(n)]
    m[i][i] = 1
    return m


def cpow_i(t):
    """i^t as an exact [re, im] pair."""
    return [[1, 0], [0, 1], [-1, 0], [0, -1]][t % 4]


def mat_i_diag(t):
    """diag(1, i^t) with exact complex entries."""
    return [[1, 0], [0, cpow_i(t)]]


def write(name, body):
    os.makedirs(OUT, exist_ok=True)
    path = os.path.join(OUT, name)
    with open(path, "w") as f:
        json.dump(body, f, indent=2, sort_keys=True)
        f.write("\n")
    print("wrote", path)


def s3_table():
    perms = list(itertools.permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    table = []
    for a in perms:
        row = []
        for b in perms:
            composed = tuple(a[b[x]] for x in range(3))
            row.append(index[composed])
        table.append(row)
    return table


def d4_sys_matrices():
    """U(t, l) = R^t F^l for the dihedral indexing g = t*2 + l."""
    def matmul(a, b):
        return [[sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2)]
                for i in range(2)]

    R = [[0, -1], [1, 0]]
    F = [[1, 0], [0, -1]]
    out = []
    for t in range(4):
        m = ident(2)
        for _ in range(t):
            m = matmul(m, R)
        for l in range(2):
            out.append(m if l == 0 else matmul(m, F))
    return out


def z2_flip():
    return {
        "name": "z2-flip",
        "groups": {"z2": {"kind": "cyclic", "n": 2}},
        "reps": {
            "sys": {"group": "z2", "kind": "matrices", "matrices": [I2, X]},
            "frame_rep": {"group": "z2", "kind": "regular"},
        },
        "states": {
            "ground": {"kind": "basis", "dim": 2, "index": 0},
            "rho": {"matrix": [[0.5, [0.25, 0.25]], [[0.25, -0.25], 0.5]]},
        },
        "operators": {"pauli_z": {"kind": "pauli", "which": "Z"}},
        "povms": {
            "frame_povm": {
                "kind": "ideal",
                "space": 2,
                "covariant": {"rep": "frame_rep", "action": "right_translation"},
            }
        },
        "frames": {"frame": {"kind": "regular", "group": "z2"}},
        "checks": [
            {"kind": "povm_covariance", "name": "covariance", "povm": "frame_povm"},
            {"kind": "born_measure", "name": "born-ground", "povm": "frame_povm",
             "omega": "ground", "expected": [1, 0]},
            {"kind": "qrf_duality", "name": "duality", "frame": "frame",
             "sys_rep": "sys", "a": "pauli_z", "rho": "rho", "omega": "ground"},
            {"kind": "qrf_invariance", "name": "invariance", "frame": "frame",
             "sys_rep": "sys", "a": "pauli_z"},
            {"kind": "qrf_restriction", "name": "restriction", "frame": "frame",
             "sys_rep": "sys", "a": "pauli_z", "omega": "ground"},
            {"kind": "qrf_localizability", "name": "localizability",
             "frame": "frame", "sys_rep": "sys", "a": "pauli_z",
             "t_values": [1, 0.5, 0.25, 0.125]},
        ],
    }


def z4_shift():
    return {
        "name": "z4-shift",
        "groups": {"z4": {"kind": "cyclic", "n": 4}},
        "reps": {
            "sys": {"group": "z4", "kind": "matrices",
                    "matrices": [mat_i_diag(t) for t in range(4)]},
            "frame_rep": {"group": "z4", "kind": "regular"},
        },
        "states": {
            "ground": {"kind": "basis", "dim": 4, "index": 0},
            "mm4": {"kind": "maximally_mixed", "dim": 4},
            "rho": {"matrix": [[0.75, 0.25], [0.25, 0.25]]},
        },
        "operators": {"a_z": {"kind": "pauli", "which": "Z"},
                      "a_x": {"kind": "pauli", "which": "X"}},
        "povms": {
            "frame_povm": {
                "kind": "ideal",
                "space": 4,
                "covariant": {"rep": "frame_rep", "action": "right_translation"},
            }
        },
        "frames": {"frame": {"kind": "regular", "group": "z4"}},
        "checks": [
            {"kind": "povm_covariance", "name": "covariance", "povm": "frame_povm"},
            {"kind": "qrf_duality", "name": "duality", "frame": "frame",
             "sys_rep": "sys", "a": "a_x", "rho": "rho", "omega": "ground"},
            {"kind": "qrf_invariance", "name": "invariance", "frame": "frame",
             "sys_rep": "sys", "a": "a_x"},
            {"kind": "qrf_origin_shift", "name": "origin-shift", "frame": "frame",
             "sys_rep": "sys", "rho": "rho", "omega": "ground", "shift": 1},
            {"kind": "povm_pushforward", "name": "pushforward-parity",
             "povm": "frame_povm", "map": [0, 1, 0, 1], "omega": "mm4"},
        ],
    }


def d4_frame():
    return {
        "name": "d4-frame",
        "groups": {"d4": {"kind": "dihedral", "n": 4}},
        "reps": {
            "sys": {"group": "d4", "kind": "matrices",
                    "matrices": d4_sys_matrices()},
            "frame_rep": {"group": "d4", "kind": "regular"},
        },
        "states": {
            "ground": {"kind": "basis", "dim": 8, "index": 0},
            "rho": {"matrix": [[0.5, 0.25], [0.25, 0.5]]},
        },
        "operators": {"a_z": {"kind": "pauli", "which": "Z"}},
        "povms": {
            "frame_povm": {
                "kind": "ideal",
                "space": 8,
                "covariant": {"rep": "frame_rep", "action": "right_translation"},
            }
        },
        "frames": {"frame": {"kind": "regular", "group": "d4"}},
        "checks": [
            {"kind": "povm_covariance", "name": "covariance", "povm": "frame_povm"},
            {"kind": "qrf_duality", "name": "duality", "frame": "frame",
             "sys_rep": "sys", "a": "a_z", "rho": "rho", "omega": "ground"},
            {"kind": "qrf_invariance", "name": "invariance", "frame": "frame",
             "sys_rep": "sys", "a": "a_z"},
            {"kind": "qrf_restriction", "name": "restriction", "frame": "frame",
             "sys_rep": "sys", "a": "a_z", "omega": "ground"},
            {"kind": "qrf_origin_shift", "name": "origin-shift", "frame": "frame",
             "sys_rep": "sys", "rho": "rho", "omega": "ground", "shift": 3},
        ],
    }


def qubit_channel():
    plus = [[0.5, 0.5], [0.5, 0.5]]
    return {
        "name": "qubit-channel",
        "groups": {},
        "states": {"plus": {"matrix": plus}},
        "channels": {
            "depol": {"kind": "depolarizing", "dim": 2},
            "conj_x": {"kind": "unitary", "matrix": X},
        },
        "povms": {"meas": {"kind": "ideal", "space": 2}},
        "checks": [
            {"kind": "povm_sharpness", "name": "sharpness", "povm": "meas"},
            {"kind": "born_measure", "name": "born-plus", "povm": "meas",
             "omega": "plus", "expected": [0.5, 0.5]},
            {"kind": "povm_channel", "name": "heisenberg-depol", "povm": "meas",
             "channel": "depol", "omega": "plus"},
            {"kind": "povm_channel", "name": "heisenberg-unitary", "povm": "meas",
             "channel": "conj_x", "omega": "plus"},
        ],
    }


def ov_integral():
    shift4 = [[1 if j == (i + 1) % 4 else 0 for j in range(4)] for i in range(4)]
    return {
        "name": "ov-integral",
        "groups": {},
        "states": {
            "rho": {"matrix": [[0.5, 0.25], [0.25, 0.5]]},
            "mm4": {"kind": "maximally_mixed", "dim": 4},
        },
        "channels": {"shift": {"kind": "unitary", "matrix": shift4}},
        "povms": {"e4": {"kind": "ideal", "space": 4}},
        "operator_fields": {
            "f": {"space": 4, "values": [Z, X, I2, Y]},
            "g": {"space": 2, "values": [Z, X]},
        },
        "checks": [
            {"kind": "ov_pairing", "name": "pairing", "field": "f", "povm": "e4",
             "rho": "rho", "omega": "mm4"},
            {"kind": "ov_change_of_variables", "name": "change-of-variables",
             "field": "g", "povm": "e4", "phi": [0, 1, 0, 1]},
            {"kind": "ov_channel_interchange", "name": "channel-interchange",
             "field": "f", "povm": "e4", "channel": "shift"},
        ],
    }


def bundle_trivial():
    # Trivial Z2 bundle over {p, q}: total index p*2 + h. The relocation
    # morphism shifts the base cyclically while fixing fiber coordinates.
    reloc_theta = {"0": 2, "1": 3, "2": 0, "3": 1}
    # psi for the relocation: conjugation by the permutation V e_x = e_{th(x)}
    v = [[0] * 4 for _ in range(4)]
    for x, y in ((0, 2), (1, 3), (2, 0), (3, 1)):
        v[y][x] = 1
    return {
        "name": "bundle-trivial",
        "groups": {"z2": {"kind": "cyclic", "n": 2},
                   "triv": {"kind": "trivial"}},
        "reps": {
            "sysx": {"group": "z2", "kind": "matrices", "matrices": [I2, X]},
            "systriv": {"group": "triv", "kind": "trivial", "dim": 2},
        },
        "states": {
            "st0": {"kind": "basis", "dim": 2, "index": 0},
            "st1": {"kind": "basis", "dim": 2, "index": 1},
        },
        "channels": {"reloc_psi": {"kind": "unitary", "matrix": v}},
        "bundles": {
            "bz2": {"kind": "trivial", "base": ["p", "q"], "group": "z2"},
            "btriv": {"kind": "trivial", "base": ["p", "q"], "group": "triv"},
        },
        "sections": {
            "s_z2": {"bundle": "bz2", "domain": [0, 1], "map": {"0": 0, "1": 2}},
            "s_triv": {"bundle": "btriv", "domain": [0, 1],
                       "map": {"0": 0, "1": 1}},
        },
        "bundle_frames": {
            "fz2": {"kind": "ideal", "bundle": "bz2", "section": "s_z2"},
            "ftriv": {"kind": "ideal", "bundle": "btriv", "section": "s_triv"},
        },
        "fields": {
            "phi": {"sys_rep": "sysx", "values": {"0": Z, "1": X}},
            "phi_zx": {"sys_rep": "systriv", "values": {"0": Z, "1": X}},
        },
        "morphisms": {
            "reloc": {"psi": "reloc_psi", "theta": reloc_theta},
        },
        "checks": [
            {"kind": "bundle_invariance", "name": "invariance", "frame": "fz2",
             "field": "phi"},
            {"kind": "bundle_localization", "name": "localize-p", "frame": "fz2",
             "field": "phi", "point": 0},
            {"kind": "bundle_localization", "name": "localize-q", "frame": "fz2",
             "field": "phi", "point": 1},
            {"kind": "bundle_morphism", "name": "relocation", "field": "phi",
             "morphism": "reloc", "from": "fz2", "to": "fz2"},
            {"kind": "bundle_local_algebra", "name": "zx-algebra",
             "frame": "ftriv", "field": "phi_zx", "states": ["st0", "st1"],
             "expected_span": 2, "expected_closure": 4},
        ],
    }


def bundle_twisted():
    # Non-product presentation of a Z2 bundle over {a, b}: fibers interleaved
    # in the total ordering, section off the zero coordinate over b.
    # total: 0=u(a), 1=v(b), 2=w(a), 3=x(b); action swaps within fibers.
    action = [[0, 2], [1, 3], [2, 0], [3, 1]]
    # Gauge change by the constant fiber translation h = 1.
    gauge_theta = {"0": 2, "1": 3, "2": 0, "3": 1}
    v = [[0] * 4 for _ in range(4)]
    for x, y in ((0, 2), (1, 3), (2, 0), (3, 1)):
        v[y][x] = 1
    return {
        "name": "bundle-twisted",
        "groups": {"z2": {"kind": "cyclic", "n": 2}},
        "reps": {
            "sysx": {"group": "z2", "kind": "matrices", "matrices": [I2, X]},
        },
        "channels": {"gauge_psi": {"kind": "unitary", "matrix": v}},
        "bundles": {
            "tw": {"kind": "table", "base": ["a", "b"],
                   "total": ["u", "v", "w", "x"], "group": "z2",
                   "proj": [0, 1, 0, 1], "action": action},
        },
        "sections": {
            "s1": {"bundle": "tw", "domain": [0, 1], "map": {"0": 2, "1": 1}},
            "s2": {"bundle": "tw", "domain": [0, 1], "map": {"0": 0, "1": 3}},
        },
        "bundle_frames": {
            "f1": {"kind": "ideal", "bundle": "tw", "section": "s1"},
            "f2": {"kind": "ideal", "bundle": "tw", "section": "s2"},
        },
        "fields": {
            "phi": {"sys_rep": "sysx", "values": {"0": Z, "1": X}},
        },
        "morphisms": {
            "gauge": {"psi": "gauge_psi", "theta": gauge_theta},
        },
        "checks": [
            {"kind": "bundle_invariance", "name": "invariance", "frame": "f1",
             "field": "phi"},
            {"kind": "bundle_localization", "name": "localize-a", "frame": "f1",
             "field": "phi", "point": 0},
            {"kind": "bundle_morphism", "name": "gauge-change", "field": "phi",
             "morphism": "gauge", "from": "f1", "to": "f2"},
        ],
    }


def bundle_reduction():
    return {
        "name": "bundle-reduction",
        "groups": {"z2": {"kind": "cyclic", "n": 2},
                   "z4": {"kind": "cyclic", "n": 4}},
        "inclusions": {"inc": {"sub": "z2", "parent": "z4", "embed": [0, 2]}},
        "reps": {
            "sys4": {"group": "z4", "kind": "matrices",
                     "matrices": [mat_i_diag(t) for t in range(4)]},
        },
        "bundles": {
            "parent": {"kind": "trivial", "base": ["m"], "group": "z4"},
            "sub": {"kind": "trivial", "base": ["m"], "group": "z2"},
        },
        "sections": {
            "sp": {"bundle": "parent", "domain": [0], "map": {"0": 0}},
            "ss": {"bundle": "sub", "domain": [0], "map": {"0": 0}},
        },
        "bundle_frames": {
            "parent_f": {"kind": "ideal", "bundle": "parent", "section": "sp"},
            "sub_f": {"kind": "ideal", "bundle": "sub", "section": "ss"},
        },
        "fields": {
            "phi": {"sys_rep": "sys4", "values": {"0": X}},
        },
        "embeddings": {
            "emb": {"sub": "sub", "parent": "parent", "inclusion": "inc",
                    "total_map": [0, 2], "base_map": [0]},
        },
        "checks": [
            {"kind": "bundle_invariance", "name": "invariance",
             "frame": "parent_f", "field": "phi"},
            {"kind": "bundle_reduction", "name": "reduction", "field": "phi",
             "sub_frame": "sub_f", "embedding": "emb"},
        ],
    }


def pde_forward():
    A = [[1, 2], [2, -1]]
    # f(p) = i^p * I, the Fourier mode annihilated by T_1 = shift - i*I.
    mode1 = [
        [[1, 0], [0, 1]],
        [[[0, 1], 0], [0, [0, 1]]],
        [[-1, 0], [0, -1]],
        [[[0, -1], 0], [0, [0, -1]]],
    ]
    t1 = [[0] * 4 for _ in range(4)]
    for p in range(4):
        t1[p][(p + 1) % 4] = 1
    t1 = [[[0, -1] if i == j else t1[i][j] for j in range(4)]
          for i in range(4)]
    rot = [[(p + g) % 4 for p in range(4)] for g in range(4)]
    return {
        "name": "pde-forward",
        "groups": {"z4": {"kind": "cyclic", "n": 4}},
        "difference_operators": {
            "d4": {"kind": "forward_difference", "n": 4},
            "t1": {"kind": "matrix", "matrix": t1},
        },
        "operator_fields": {
            "const_a": {"space": 4, "values": [A, A, A, A]},
            "varying": {"space": 4, "values": [Z, X, Y, I2]},
            "mode1": {"space": 4, "values": mode1},
        },
        "scalar_actions": {
            "rot4": {"group": "z4", "kind": "point_action", "action": rot},
        },
        "checks": [
            {"kind": "pde_lift_duality", "name": "lift-duality", "op": "d4",
             "field": "varying"},
            {"kind": "pde_kernel", "name": "constants-in-kernel", "op": "d4",
             "field": "const_a"},
            {"kind": "pde_kernel", "name": "varying-not-in-kernel", "op": "d4",
             "field": "varying", "expect_member": False},
            {"kind": "pde_kernel", "name": "fourier-mode", "op": "t1",
             "field": "mode1"},
            {"kind": "pde_symmetry", "name": "rotation-preserves-kernel",
             "op": "d4", "action": "rot4"},
        ],
    }


def geometry_s3():
    A6 = diag(1, 2, 3, 4, 5, 6)
    split = diag(0.5, 0.5, 0, 0, 0, 0)
    sector0 = diag(0.5, 0, 0.5, 0, 0, 0)
    third = 1.0 / 3.0
    return {
        "name": "geometry-s3",
        "groups": {"s3": {"kind": "table", "table": s3_table()},
                   "z2": {"kind": "cyclic", "n": 2},
                   "dot": {"kind": "trivial"}},
        "inclusions": {"little": {"sub": "z2", "parent": "s3",
                                  "embed": [0, 2]}},
        "reps": {"sys6": {"group": "s3", "kind": "regular"}},
        "bundles": {"b": {"kind": "trivial", "base": ["o"], "group": "s3"}},
        "sections": {"ref": {"bundle": "b", "domain": [0], "map": {"0": 0}}},
        "bundle_frames": {"f": {"kind": "ideal", "bundle": "b",
                                "section": "ref"}},
        "models": {"m": {"bundle": "b", "little": "little",
                         "reference": "ref"}},
        "fields": {"phi": {"sys_rep": "sys6", "values": {"0": A6}}},
        "states": {
            "mm6": {"kind": "maximally_mixed", "dim": 6},
            "split": {"matrix": split},
            "sector0": {"matrix": sector0},
        },
        "difference_operators": {
            "triv_eq": {"kind": "forward_difference", "n": 1},
            "id_eq": {"kind": "matrix", "matrix": [[1]]},
        },
        "checks": [
            {"kind": "geom_stratification", "name": "three-sectors",
             "model": "m", "point": 0, "expected_sizes": [2, 2, 2]},
            {"kind": "geom_probabilities", "name": "uniform-sectors",
             "model": "m", "frame": "f", "omega": "mm6",
             "expected": [third, third, third]},
            {"kind": "geom_probabilities", "name": "indefinite-half-half",
             "model": "m", "frame": "f", "omega": "split",
             "expected": [0.5, 0.5, 0]},
            {"kind": "geom_reduced_vs_full", "name": "reduced-vs-full",
             "model": "m", "frame": "f", "field": "phi", "omega": "sector0"},
            {"kind": "geom_gr_coupled", "name": "gr-degenerate", "model": "m",
             "frame": "f", "field": "phi",
             "equations": {"0": "triv_eq", "1": "triv_eq", "2": "triv_eq"},
             "reference": "relativize"},
            {"kind": "geom_gr_coupled", "name": "gr-unsolvable", "model": "m",
             "frame": "f", "field": "phi",
             "equations": {"0": "id_eq", "1": "id_eq", "2": "id_eq"},
             "reference": "zero"},
        ],
    }


def geometry_paths():
    ident4 = {str(i): i for i in range(4)}
    return {
        "name": "geometry-paths",
        "groups": {"z2": {"kind": "cyclic", "n": 2},
                   "dot": {"kind": "trivial"}},
        "inclusions": {
            "full": {"sub": "z2", "parent": "z2", "embed": [0, 1]},
            "stat": {"sub": "dot", "parent": "z2", "embed": [0]},
        },
        "reps": {"sysx": {"group": "z2", "kind": "matrices",
                          "matrices": [I2, X]}},
        "bundles": {"b": {"kind": "trivial", "base": ["a", "b"],
                          "group": "z2"}},
        "sections": {"s": {"bundle": "b", "domain": [0, 1],
                           "map": {"0": 0, "1": 2}}},
        "bundle_frames": {"f": {"kind": "ideal", "bundle": "b",
                                "section": "s"}},
        "models": {"m": {"bundle": "b", "little": "full", "reference": "s"}},
        "fields": {"phi": {"sys_rep": "sysx", "values": {"0": Z, "1": Z}}},
        "operators": {"op_z": {"kind": "pauli", "which": "Z"},
                      "op_zero": {"matrix": ZERO2}},
        "states": {
            "mm1": {"kind": "maximally_mixed", "dim": 1},
            "mm2": {"kind": "maximally_mixed", "dim": 2},
        },
        "povms": {
            "p1": {"kind": "ideal", "space": 1},
            "p2": {"kind": "ideal", "space": 2},
        },
        "channels": {"id4": {"kind": "identity", "dim": 4}},
        "morphisms": {"identity": {"psi": "id4", "theta": ident4}},
        "checks": [
            {"kind": "geom_stratification", "name": "single-sector",
             "model": "m", "point": 0, "expected_sizes": [2]},
            {"kind": "geom_path_observable", "name": "on-section", "model": "m",
             "section": "s", "field": "phi", "omega": "mm2", "povm": "p2",
             "path": [0, 1], "variant": "on_section", "expected": "op_z"},
            {"kind": "geom_path_observable", "name": "lifted", "model": "m",
             "section": "s", "field": "phi", "omega": "mm2", "povm": "p2",
             "path": [0, 1], "lift": [0, 2], "variant": "lifted",
             "expected": "op_z"},
            {"kind": "geom_path_observable", "name": "indefinite-orientation",
             "model": "m", "section": "s", "field": "phi", "omega": "mm2",
             "povm": "p2", "path": [0],
             "variant": "indefinite_orientation", "expected": "op_zero"},
            {"kind": "geom_path_observable", "name": "stationary", "model": "m",
             "section": "s", "field": "phi", "omega": "mm1", "povm": "p1",
             "path": [0], "variant": "stationary_subgroup",
             "stationary": "stat", "expected": "op_z"},
            {"kind": "geom_isometry", "name": "identity-isometry",
             "morphism": "identity", "model": "m", "from": "f", "to": "f",
             "field": "phi", "expect_isometry": True},
        ],
    }


def semidirect_local():
    return {
        "name": "semidirect-local",
        "groups": {"z2": {"kind": "cyclic", "n": 2},
                   "z4": {"kind": "cyclic", "n": 4}},
        "inclusions": {"inc24": {"sub": "z2", "parent": "z4",
                                 "embed": [0, 2]}},
        "reps": {
            "sys4": {"group": "z4", "kind": "matrices",
                     "matrices": [mat_i_diag(t) for t in range(4)]},
            "sysx": {"group": "z2", "kind": "matrices", "matrices": [I2, X]},
            "reg2": {"group": "z2", "kind": "regular"},
        },
        "operators": {"a_x": {"kind": "pauli", "which": "X"},
                      "a_z": {"kind": "pauli", "which": "Z"}},
        "states": {
            "mm2": {"kind": "maximally_mixed", "dim": 2},
            "mm4": {"kind": "maximally_mixed", "dim": 4},
        },
        "channels": {"conj_x": {"kind": "unitary", "matrix": X}},
        "povms": {
            "flip_povm": {"space": 2, "effects": [P1, P0]},
            "prod4": {"kind": "ideal", "space": 4},
        },
        "frames": {
            "fz2": {"kind": "regular", "group": "z2"},
            "flipped": {"kind": "custom", "group": "z2", "povm": "flip_povm",
                        "rep": "reg2"},
        },
        "operator_fields": {"f2": {"space": 2, "values": [Z, X]}},
        "checks": [
            {"kind": "qrf_reduction", "name": "reduction", "sub_frame": "fz2",
             "inclusion": "inc24", "sys_rep": "sys4", "a": "a_x"},
            {"kind": "qrf_external_transform", "name": "external-transform",
             "from": "fz2", "to": "flipped", "psi": "conj_x",
             "sys_rep": "sysx", "a": "a_z"},
            {"kind": "qrf_local_observable", "name": "local-observable",
             "field": "f2", "frame": "fz2", "omega": "mm2"},
            {"kind": "qrf_local_observable_gauged", "name": "gauged",
             "field": "f2", "gauge_rep": "sysx", "povm": "prod4",
             "omega": "mm4"},
        ],
    }


def broken_covariance():
    return {
        "name": "broken-covariance",
        "groups": {"z2": {"kind": "cyclic", "n": 2}},
        "reps": {"frame_rep": {"group": "z2", "kind": "regular"}},
        "povms": {
            "stuck": {
                "kind": "ideal",
                "space": 2,
                # The flip acts trivially on the sample space, so the basis
                # projectors cannot be covariant: the violation is exactly 1.
                "covariant": {"rep": "frame_rep", "action": [[0, 1], [0, 1]]},
            }
        },
        "checks": [
            {"kind": "povm_covariance", "name": "covariance", "povm": "stuck"},
        ],
    }


def broken_normalization():
    return {
        "name": "broken-normalization",
        "groups": {},
        "povms": {
            "overweight": {"space": 2, "effects": [I2, I2]},
        },
        "checks": [],
    }


def main():
    write("z2_flip.json", z2_flip())
    write("z4_shift.json", z4_shift())
    write("d4_frame.json", d4_frame())
    write("qubit_channel.json", qubit_channel())
    write("ov_integral.json", ov_integral())
    write("bundle_trivial.json", bundle_trivial())
    write("bundle_twisted.json", bundle_twisted())
    write("bundle_reduction.json", bundle_reduction())
    write("pde_forward.json", pde_forward())
    write("geometry_s3.json", geometry_s3())
    write("geometry_paths.json", geometry_paths())
    write("semidirect_local.json", semidirect_local())
    write("broken_covariance.json", broken_covariance())
    write("broken_normalization.json", broken_normalization())


if __name__ == "__main__":
    main()
