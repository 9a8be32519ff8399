"""Dev-only: derive and freeze the certificate tables for formats.json.

Builds the three skew formats, computes every 4x4 principal Pfaffian and
every matrix-vector entry, matches them against the hand-derived certificate
tables, and writes the frozen JSON.  Any mismatch prints the residual.
"""

import json
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from isurf.rings import (standard_relations, family_relations, lam_theta_relations)
from isurf.skew import SkewMatrix

CORO_MATRIX = [
    ["0", "0", "x0", "x1^2", "u0"],
    ["0", "x1", "y", "u1"],
    ["u0", "x1*u1", "t"],
    ["t", "-(tau*w^3 + theta*u1*z)"],
    ["P"],
]
CORO_VECTOR = ["0", "-u1^2", "0", "w", "-y", "0"]
CORO_PF = {
    (0, 1, 2, 3): [], (0, 1, 2, 4): [], (0, 1, 2, 5): [],
    (0, 1, 3, 4): [["-1", "R1"]],
    (0, 1, 3, 5): [["-1", "R4"]],
    (0, 1, 4, 5): [["-1", "R5"]],
    (0, 2, 3, 4): [["-x1", "R4"]],
    (0, 2, 3, 5): [["-1", "R7"]],
    (0, 2, 4, 5): [["-x1", "R8"]],
    (0, 3, 4, 5): [["1", "R11"]],
    (1, 2, 3, 4): [["-1", "R5"]],
    (1, 2, 3, 5): [["-1", "R8"]],
    (1, 2, 4, 5): [["1", "R9"]],
    (1, 3, 4, 5): [["1", "R12"]],
    (2, 3, 4, 5): [["1", "R14"]],
}
CORO_PROD = {
    (0,): [["1", "R2"]], (1,): [["1", "R3"]], (2,): [["-1", "R6"]],
    (3,): [["1", "R9"]], (4,): [["1", "R10"]], (5,): [["1", "R13"]],
}

M1_MATRIX = [["lam", "x1", "w", "u1"], ["u0", "y*u1", "t"], ["t", "-tau*y*w^2"], ["P"]]
V1 = ["-lam*tau*y^2*w", "u0", "-x1*y", "x0", "0"]
M1_PF = {
    (1, 2, 3, 4): [["1", "R14"]],
    (0, 2, 3, 4): [["1", "R12"]],
    (0, 1, 3, 4): [["1", "R10"]],
    (0, 1, 2, 4): [["-1", "R8"]],
    (0, 1, 2, 3): [["-1", "R6"]],
}
M1_PROD = {
    (0,): [["1", "R2"]],
    (1,): [["y", "R4"]],
    (2,): [["1", "R7"]],
    (3,): [["y", "R8"]],
    (4,): [["-1", "R11"], ["tau*w*(x1*w - lam*u1)", "R3"]],
}

M2_MATRIX = [["lam", "x1", "y", "t"], ["y", "w", "u1^2"], ["-u1", "tau*w^3"], ["-P"]]
V2 = ["u0", "-lam^2*tau*w", "x1^2", "-x0", "0"]
M2_PF = {
    (1, 2, 3, 4): [["-1", "R13"]],
    (0, 2, 3, 4): [["-1", "R12"]],
    (0, 1, 3, 4): [["-1", "R10"]],
    (0, 1, 2, 4): [["-1", "R9"]],
    (0, 1, 2, 3): [["-1", "R3"]],
}
M2_PROD = {
    (0,): [["-1", "R1"]], (1,): [["-1", "R2"]], (2,): [["1", "R4"]],
    (3,): [["1", "R5"]], (4,): [["-1", "R11"]],
}

LT_MATRIX = [
    ["0", "0", "x0", "x1^2", "u0"],
    ["0", "x1", "y", "u1"],
    ["u0", "x1*u1", "t"],
    ["t", "theta*u1*z"],
    ["P"],
]
LT_VECTOR = ["0", "-u1^2", "0", "w", "-y", "lam"]
LT_PF = {
    (0, 1, 2, 3): [], (0, 1, 2, 4): [], (0, 1, 2, 5): [],
    (0, 1, 3, 4): [["-1", "R1"]],
    (0, 1, 3, 5): [["-1", "R4"]],
    (0, 1, 4, 5): [["-1", "R5"]],
    (0, 2, 3, 4): [["-x1", "R4"]],
    (0, 2, 3, 5): [["-1", "R7"]],
    (0, 2, 4, 5): [["-x1", "R8"]],
    (0, 3, 4, 5): [["1", "R11"]],
    (1, 2, 3, 4): [["-1", "R5"]],
    (1, 2, 3, 5): [["-1", "R8"]],
    (1, 2, 4, 5): [["1", "R9"]],
    (1, 3, 4, 5): [["1", "R12"]],
    (2, 3, 4, 5): [["1", "R14"]],
}
LT_PROD = {
    (0,): [["1", "R2"]], (1,): [["1", "R3"]], (2,): [["-1", "R6"]],
    (3,): [["1", "R9"]], (4,): [["1", "R10"]], (5,): [["1", "R13"]],
}


def check(label, rels, matrix_rows, vector, pf_certs, prod_certs, modulus=None):
    ring = rels.ring
    matrix = SkewMatrix.from_upper_rows(ring, matrix_rows)
    vec = [ring.parse(t) for t in vector]
    ok = True
    for rows, pf in matrix.sub_pfaffians(4):
        combo = pf_certs.get(rows)
        if combo is None:
            if not pf.is_zero():
                print(f"{label}: MISSING certificate for pfaffian {rows}: {pf}")
                ok = False
            continue
        target = ring.zero()
        for mult, name in combo:
            target = target + ring.parse(mult) * rels.get(name)
        residual = pf - target
        if not residual.is_zero():
            if modulus is not None:
                try:
                    residual.exact_divide(ring.parse(modulus))
                    continue
                except Exception:
                    pass
            print(f"{label}: pfaffian {rows} residual: {residual}")
            ok = False
    for i, entry in enumerate(matrix.multiply_vector(vec)):
        combo = prod_certs.get((i,))
        if combo is None:
            if not entry.is_zero():
                print(f"{label}: MISSING certificate for product row {i}: {entry}")
                ok = False
            continue
        target = ring.zero()
        for mult, name in combo:
            target = target + ring.parse(mult) * rels.get(name)
        residual = entry - target
        if not residual.is_zero():
            if modulus is not None:
                try:
                    residual.exact_divide(ring.parse(modulus))
                    print(f"{label}: product {i} holds modulo {modulus}")
                    continue
                except Exception:
                    pass
            print(f"{label}: product row {i} residual: {residual}")
            ok = False
    return ok


def main():
    std = standard_relations()
    fam = family_relations()
    lt = lam_theta_relations()
    results = [
        check("rank6", std, CORO_MATRIX, CORO_VECTOR, CORO_PF, CORO_PROD),
        check("family_m1", fam, M1_MATRIX, V1, M1_PF, M1_PROD),
        check("family_m2", fam, M2_MATRIX, V2, M2_PF, M2_PROD),
        check("lam_theta", lt, LT_MATRIX, LT_VECTOR, LT_PF, LT_PROD, "lam*theta"),
    ]
    if not all(results):
        print("NOT WRITING fixtures: fix certificates first")
        return 1

    def entry(system, matrix, vector, pf, prod, modulus=None):
        certs = [{"kind": "pfaffian", "index": list(k), "combo": v} for k, v in sorted(pf.items())]
        certs += [{"kind": "product", "index": list(k), "combo": v} for k, v in sorted(prod.items())]
        out = {"system": system, "matrix": matrix, "vector": vector, "certificates": certs}
        if modulus:
            out["modulus"] = modulus
        return out

    data = {
        "rank6": entry("standard", CORO_MATRIX, CORO_VECTOR, CORO_PF, CORO_PROD),
        "family_m1": entry("family", M1_MATRIX, V1, M1_PF, M1_PROD),
        "family_m2": entry("family", M2_MATRIX, V2, M2_PF, M2_PROD),
        "lam_theta": entry("lam_theta", LT_MATRIX, LT_VECTOR, LT_PF, LT_PROD, "lam*theta"),
    }
    target = os.path.join(os.path.dirname(__file__), "..",
                          "src", "isurf", "fixtures", "formats.json")
    with open(target, "w") as fh:
        json.dump(data, fh, indent=1)
        fh.write("\n")
    print("formats.json written")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
