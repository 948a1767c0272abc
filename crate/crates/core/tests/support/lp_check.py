"""Solve an LP-format file with scipy's HiGHS interface.

Prints one of `optimal <objective>`, `infeasible`, `unknown <message>`;
exits 77 when scipy is unavailable.
"""
import re
import sys

try:
    import numpy as np
    from scipy.optimize import Bounds, LinearConstraint, milp
    from scipy.sparse import lil_matrix
except ImportError:
    sys.exit(77)

TERM = re.compile(r"([+-])\s*(\d+)?\s*([A-Za-z_]\w*)")


def parse(text):
    section = None
    rows, fixed, general, binary = [], {}, [], []
    objective = None
    for raw in text.splitlines():
        line = raw.split("\\", 1)[0].rstrip()
        if not line.strip():
            continue
        head = line.strip().lower()
        if head in ("minimize", "subject to", "bounds", "general", "binary", "end"):
            section = head
            continue
        if section == "minimize":
            objective = line.split(":", 1)[1].split()[0]
        elif section == "subject to":
            if re.match(r"^\s*\w+:", line):
                rows.append(line.split(":", 1)[1])
            else:
                rows[-1] += " " + line.strip()
        elif section == "bounds":
            name, value = (s.strip() for s in line.split("="))
            fixed[name] = int(value)
        elif section == "general":
            general += line.split()
        elif section == "binary":
            binary += line.split()
    return objective, rows, fixed, general, binary


def main(path):
    objective, rows, fixed, general, binary = parse(open(path).read())
    names = general + binary
    index = {v: i for i, v in enumerate(names)}
    a = lil_matrix((len(rows), len(names)))
    lb = np.full(len(rows), -np.inf)
    ub = np.full(len(rows), np.inf)
    for i, row in enumerate(rows):
        lhs, op, rhs = re.split(r"(<=|>=|=)", row)
        for sign, coef, var in TERM.findall(lhs):
            a[i, index[var]] = (-1 if sign == "-" else 1) * int(coef or 1)
        rhs = float(rhs)
        if op in (">=", "="):
            lb[i] = rhs
        if op in ("<=", "="):
            ub[i] = rhs
    lo = np.zeros(len(names))
    hi = np.array([1.0 if v in binary else np.inf for v in names])
    for v, val in fixed.items():
        lo[index[v]] = hi[index[v]] = val
    c = np.zeros(len(names))
    c[index[objective]] = 1
    res = milp(
        c,
        constraints=LinearConstraint(a.tocsr(), lb, ub),
        integrality=np.ones(len(names)),
        bounds=Bounds(lo, hi),
        options={"time_limit": 240},
    )
    if res.status == 2:
        print("infeasible")
    elif res.status == 0:
        print(f"optimal {round(res.fun)}")
    else:
        print(f"unknown {res.message}")


if __name__ == "__main__":
    main(sys.argv[1])
