#!/usr/bin/env python3
"""Cross-checks exported LP files against an external exact MILP solver.

For each random instance: solve it with the CLI's exhaustive backend, export
the linearized program with `export-lp`, hand the LP file to an external MILP
solver (a `cbc`/`glpsol` binary when available, otherwise GLPK through
cvxopt), and require the objectives to agree within 1e-6.

Exit codes: 0 all instances agree, 1 disagreement or tool failure, 77 no
MILP solver backend available (skip).
"""

import argparse
import json
import os
import random
import re
import shutil
import subprocess
import sys
import tempfile


# ---------------------------------------------------------------- generation

def fixed_three_node_instance():
    """Small reference instance: a direct positive dependency competing with
    a stronger two-hop negative chain."""
    return {
        "schema_version": 1,
        "value_types": [{"key": 1, "name": "economic"}],
        "requirements": [
            {"id": "r1", "cost": 5, "values": {"1": 10}},
            {"id": "r2", "cost": 4, "values": {"1": 8}},
            {"id": "r3", "cost": 3, "values": {"1": 6}},
        ],
        "dependencies": [
            {"type_key": 1, "source_id": "r1", "target_id": "r2",
             "quality": "+", "strength": 0.6},
            {"type_key": 1, "source_id": "r2", "target_id": "r3",
             "quality": "-", "strength": 0.5},
            {"type_key": 1, "source_id": "r1", "target_id": "r3",
             "quality": "+", "strength": 0.2},
        ],
        "structural": [],
        "budget": 10,
        "social_bounds": {},
    }


def generate_instance(rng, n, types, force_infeasible):
    value_types = [{"key": 1, "name": "economic"}]
    for k in range(2, types + 1):
        value_types.append({"key": k, "name": "social%d" % k})

    requirements = []
    totals = [0.0] * (types + 1)
    for i in range(n):
        values = {}
        for k in range(1, types + 1):
            v = round(rng.uniform(0.0, 10.0), 3)
            values[str(k)] = v
            totals[k] += v
        requirements.append({
            "id": "r%d" % (i + 1),
            "cost": round(rng.uniform(0.5, 10.0), 3),
            "values": values,
        })
    budget = round(rng.uniform(0.3, 0.8) * sum(r["cost"] for r in requirements), 3)

    dependencies = []
    seen = set()
    for k in range(1, types + 1):
        for s in range(n):
            for t in range(n):
                if s != t and rng.random() < 0.35:
                    if (k, s, t) in seen:
                        continue
                    seen.add((k, s, t))
                    dependencies.append({
                        "type_key": k,
                        "source_id": "r%d" % (s + 1),
                        "target_id": "r%d" % (t + 1),
                        "quality": rng.choice(["+", "-", "±"]),
                        "strength": round(rng.uniform(0.0, 1.0), 3),
                    })

    structural = []
    pairs = set()
    for _ in range(rng.randint(0, 3)):
        a, b = rng.sample(range(n), 2) if n >= 2 else (0, 0)
        if a == b:
            continue
        kind = rng.choice(["precedes", "conflicts"])
        key = (kind, min(a, b), max(a, b)) if kind == "conflicts" else (kind, a, b)
        if key in pairs:
            continue
        pairs.add(key)
        structural.append({
            "kind": kind,
            "first_id": "r%d" % (a + 1),
            "second_id": "r%d" % (b + 1),
        })

    social_bounds = {}
    for k in range(2, types + 1):
        if force_infeasible:
            social_bounds[str(k)] = round(totals[k] * 1.1 + 1.0, 3)
        else:
            social_bounds[str(k)] = round(rng.uniform(-1.0, 0.4 * totals[k]), 3)

    return {
        "schema_version": 1,
        "value_types": value_types,
        "requirements": requirements,
        "dependencies": dependencies,
        "structural": structural,
        "budget": budget,
        "social_bounds": social_bounds,
    }


# ---------------------------------------------------------------- LP parsing

TOKEN_RE = re.compile(r"<=|>=|[+-]|[A-Za-z_][A-Za-z0-9_]*:?|[0-9.]+(?:[eE][+-]?[0-9]+)?")
SECTIONS = {"maximize", "subject", "to", "bounds", "binary", "end"}


def tokenize_lp(text):
    tokens = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("\\"):
            continue
        tokens.extend(TOKEN_RE.findall(line))
    return tokens


def parse_terms(tokens, pos):
    """Parses [sign] [coef] var ... until a non-term token; returns (terms, pos)."""
    terms = []
    sign = 1.0
    coef = None
    while pos < len(tokens):
        tok = tokens[pos]
        if tok in ("<=", ">=") or tok.endswith(":") or tok.lower() in SECTIONS:
            break
        if tok == "+":
            sign, coef = 1.0, None
        elif tok == "-":
            sign, coef = -1.0, None
        elif re.fullmatch(r"[0-9.]+(?:[eE][+-]?[0-9]+)?", tok):
            coef = float(tok)
        else:
            terms.append((sign * (1.0 if coef is None else coef), tok))
            sign, coef = 1.0, None
        pos += 1
    return terms, pos


def parse_lp(text):
    tokens = tokenize_lp(text)
    pos = 0
    model = {"objective": [], "rows": [], "bounds": {}, "binaries": []}
    section = None
    while pos < len(tokens):
        tok = tokens[pos]
        low = tok.lower()
        if low == "maximize":
            section = "objective"
            pos += 1
            continue
        if low == "subject":
            section = "rows"
            pos += 2  # skip "to"
            continue
        if low == "bounds":
            section = "bounds"
            pos += 1
            continue
        if low == "binary":
            section = "binary"
            pos += 1
            continue
        if low == "end":
            break
        if section == "objective":
            if tok.endswith(":"):
                pos += 1
            model["objective"], pos = parse_terms(tokens, pos)
        elif section == "rows":
            assert tok.endswith(":"), "expected a row name, got %r" % tok
            pos += 1
            terms, pos = parse_terms(tokens, pos)
            sense = tokens[pos]
            pos += 1
            rhs_sign = 1.0
            if tokens[pos] in ("+", "-"):
                rhs_sign = -1.0 if tokens[pos] == "-" else 1.0
                pos += 1
            rhs = rhs_sign * float(tokens[pos])
            pos += 1
            model["rows"].append((terms, sense, rhs))
        elif section == "bounds":
            lo = float(tokens[pos])
            assert tokens[pos + 1] == "<="
            var = tokens[pos + 2]
            assert tokens[pos + 3] == "<="
            hi = float(tokens[pos + 4])
            pos += 5
            model["bounds"][var] = (lo, hi)
        elif section == "binary":
            model["binaries"].append(tok)
            pos += 1
        else:
            raise AssertionError("token %r outside any section" % tok)
    return model


# ---------------------------------------------------------------- solving

def find_backend():
    for name in ("cbc", "glpsol"):
        path = shutil.which(name)
        if path:
            return name, path
    try:
        from cvxopt import glpk  # noqa: F401
        return "cvxopt-glpk", None
    except ImportError:
        return None, None


def solve_with_cbc(path, lp_file, workdir):
    sol_file = os.path.join(workdir, "cbc_solution.txt")
    subprocess.run([path, lp_file, "solve", "solution", sol_file],
                   check=True, capture_output=True)
    with open(sol_file) as f:
        first = f.readline()
    if "Infeasible" in first or "infeasible" in first:
        return None
    match = re.search(r"objective value\s+(-?[0-9.eE+]+)", first)
    assert match, "cannot parse cbc solution header: %r" % first
    return float(match.group(1))


def solve_with_glpsol(path, lp_file, workdir):
    sol_file = os.path.join(workdir, "glpsol_solution.txt")
    subprocess.run([path, "--lp", lp_file, "-o", sol_file],
                   check=True, capture_output=True)
    with open(sol_file) as f:
        text = f.read()
    if re.search(r"Status:\s+INTEGER EMPTY", text):
        return None
    match = re.search(r"Objective:\s+\S+\s+=\s+(-?[0-9.eE+]+)", text)
    assert match, "cannot parse glpsol solution"
    return float(match.group(1))


def solve_with_cvxopt(lp_file):
    from cvxopt import matrix, glpk

    with open(lp_file) as f:
        model = parse_lp(f.read())

    variables = []
    index = {}

    def var_index(name):
        if name not in index:
            index[name] = len(variables)
            variables.append(name)
        return index[name]

    for coef, var in model["objective"]:
        var_index(var)
    for terms, _, _ in model["rows"]:
        for coef, var in terms:
            var_index(var)
    for var in model["binaries"]:
        var_index(var)
    for var in model["bounds"]:
        var_index(var)

    n = len(variables)
    c = [0.0] * n
    for coef, var in model["objective"]:
        c[index[var]] -= coef  # glpk minimizes

    rows = []
    rhs = []
    for terms, sense, bound in model["rows"]:
        row = [0.0] * n
        for coef, var in terms:
            row[index[var]] += coef
        if sense == "<=":
            rows.append(row)
            rhs.append(bound)
        else:
            rows.append([-v for v in row])
            rhs.append(-bound)
    binaries = {index[v] for v in model["binaries"]}
    for var, (lo, hi) in model["bounds"].items():
        i = index[var]
        row = [0.0] * n
        row[i] = 1.0
        rows.append(row[:])
        rhs.append(hi)
        row[i] = -1.0
        rows.append(row)
        rhs.append(-lo)

    G = matrix(list(map(list, zip(*rows))), tc="d") if rows else matrix(0.0, (0, n))
    h = matrix(rhs, tc="d")
    glpk.options["msg_lev"] = "GLP_MSG_OFF"
    status, x = glpk.ilp(matrix(c, tc="d"), G, h, None, None, set(), binaries)
    if x is None:
        return None
    return -sum(ci * xi for ci, xi in zip(c, x))


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--cli", required=True, help="path to the sors binary")
    parser.add_argument("--count", type=int, default=20)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--tolerance", type=float, default=1e-6)
    args = parser.parse_args()

    backend, backend_path = find_backend()
    if backend is None:
        print("SKIP: no MILP solver available (need cbc, glpsol, or cvxopt with GLPK)")
        return 77

    rng = random.Random(args.seed)
    failures = 0
    with tempfile.TemporaryDirectory(prefix="sors-lp-roundtrip-") as workdir:
        for trial in range(args.count):
            if trial == 0:
                instance = fixed_three_node_instance()
            else:
                n = rng.randint(2, 10)
                types = rng.randint(1, 3)
                force_infeasible = trial % 7 == 3
                instance = generate_instance(rng, n, types, force_infeasible)
            project = os.path.join(workdir, "instance%d.json" % trial)
            with open(project, "w") as f:
                json.dump(instance, f)

            ref = subprocess.run(
                [args.cli, "solve", project, "--backend", "exhaustive", "--report", "json"],
                capture_output=True, text=True)
            if ref.returncode not in (0, 2):
                print("FAIL trial %d: solve exited %d: %s"
                      % (trial, ref.returncode, ref.stderr.strip()))
                failures += 1
                continue
            report = json.loads(ref.stdout)

            lp_file = os.path.join(workdir, "instance%d.lp" % trial)
            export = subprocess.run([args.cli, "export-lp", project, "-o", lp_file],
                                    capture_output=True, text=True)
            if export.returncode != 0:
                print("FAIL trial %d: export-lp exited %d" % (trial, export.returncode))
                failures += 1
                continue

            if backend == "cbc":
                lp_objective = solve_with_cbc(backend_path, lp_file, workdir)
            elif backend == "glpsol":
                lp_objective = solve_with_glpsol(backend_path, lp_file, workdir)
            else:
                lp_objective = solve_with_cvxopt(lp_file)

            if ref.returncode == 2:
                if lp_objective is None:
                    print("ok trial %d: both infeasible" % trial)
                else:
                    print("FAIL trial %d: reference infeasible, LP optimum %r"
                          % (trial, lp_objective))
                    failures += 1
                continue
            if lp_objective is None:
                print("FAIL trial %d: LP infeasible, reference objective %r"
                      % (trial, report["objective"]))
                failures += 1
                continue
            delta = abs(lp_objective - report["objective"])
            if delta > args.tolerance:
                print("FAIL trial %d: |%r - %r| = %g > %g"
                      % (trial, lp_objective, report["objective"], delta, args.tolerance))
                failures += 1
            else:
                print("ok trial %d: objective %.9f, delta %.2e (%s)"
                      % (trial, lp_objective, delta, backend))

    if failures:
        print("%d/%d instances failed" % (failures, args.count))
        return 1
    print("all %d instances agree within %g (%s)" % (args.count, args.tolerance, backend))
    return 0


if __name__ == "__main__":
    sys.exit(main())
