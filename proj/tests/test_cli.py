#!/usr/bin/env python3
"""End-to-end checks of the command line tool: exit codes, determinism,
atomic output, and the documented table formats."""

import json
import math
import os
import subprocess
import sys
import tempfile

CLI = sys.argv[1]
failures = []


def run(*args, expect=0):
    proc = subprocess.run([CLI, *args], capture_output=True, text=True)
    if proc.returncode != expect:
        failures.append(
            f"{' '.join(args)}: exit {proc.returncode} != {expect}\n"
            f"stderr: {proc.stderr.strip()}"
        )
    return proc


def check(cond, label):
    if not cond:
        failures.append(label)


def main():
    tmp = tempfile.mkdtemp(prefix="condshrink_cli_")

    # thresholds: values and format
    out = run("thresholds", "--gamma", "50", "--format", "json").stdout
    doc = json.loads(out)
    check(abs(doc["lambda_plus"] - 65.142) < 0.01, "lambda_plus(50)")
    check(abs(doc["lambda_1_plus"] - 103.887) < 0.01, "lambda_1_plus(50)")
    check(abs(doc["ell_1_plus"] - 52.926) < 0.01, "ell_1_plus(50)")
    run("thresholds", expect=1)  # missing --gamma
    run("thresholds", "--gamma", "-3", expect=1)

    # shrink on an eigenvalue list, then raw-idempotence on its own output
    values_path = os.path.join(tmp, "values.txt")
    with open(values_path, "w") as f:
        f.write("6.25\n3.9\n0.5\n")
    out = run("shrink", "--eigenvalues", values_path, "--gamma", "1",
              "--shrinker", "single").stdout
    lines = out.strip().splitlines()
    check(lines[0] == "index,eigenvalue,eta,dead_zone", "shrink csv header")
    etas = [line.split(",")[2] for line in lines[1:]]
    check(abs(float(etas[0]) - 2.0) < 1e-9, "shrink eta[0] == 2")
    check(etas[1] == "1" and etas[2] == "1", "shrink dead zone to exactly 1")
    flags = [line.split(",")[3] for line in lines[1:]]
    check(flags == ["0", "0", "0"], "no dead-zone flag at or below the edge")

    shrunk_path = os.path.join(tmp, "shrunk.txt")
    with open(shrunk_path, "w") as f:
        f.write("".join(e + "\n" for e in etas))
    out2 = run("shrink", "--eigenvalues", shrunk_path, "--gamma", "1",
               "--shrinker", "raw").stdout
    back = [line.split(",")[2] for line in out2.strip().splitlines()[1:]]
    check(back == etas, "raw shrink is idempotent on shrunk spectra")

    # dead-zone flag set when the input exceeds the bulk edge
    with open(values_path, "w") as f:
        f.write("4.4\n0.5\n")  # 4.4 in (lambda_plus, lambda_1_plus)
    out = run("shrink", "--eigenvalues", values_path, "--gamma", "1",
              "--format", "json").stdout
    doc = json.loads(out)
    check(doc["dead_zone"] == [True, False], "dead-zone flags")

    # identity shrinker maps everything to 1
    out = run("shrink", "--eigenvalues", values_path, "--gamma", "1",
              "--shrinker", "identity", "--format", "json").stdout
    check(json.loads(out)["etas"] == [1.0, 1.0], "identity etas")

    # input validation: missing gamma, two input modes, ragged csv
    run("shrink", "--eigenvalues", values_path, expect=1)
    run("shrink", "--eigenvalues", values_path, "--spikes", "5",
        "--gamma", "1", expect=1)
    ragged = os.path.join(tmp, "ragged.csv")
    with open(ragged, "w") as f:
        f.write("1,2,3\n4,5\n")
    run("shrink", "--matrix", ragged, expect=1)
    ascending = os.path.join(tmp, "ascending.txt")
    with open(ascending, "w") as f:
        f.write("1.0\n2.0\n")
    run("shrink", "--eigenvalues", ascending, "--gamma", "1", expect=1)

    # matrix mode: gamma from the shape, covariance output, atomicity
    matrix = os.path.join(tmp, "x.csv")
    proc = run("shrink", "--spikes", "5", "--n", "60", "--p", "30",
               "--seed", "3", "--format", "json")
    doc = json.loads(proc.stdout)
    check(abs(doc["gamma"] - 0.5) < 1e-12, "synthetic gamma = p/n")
    check(len(doc["etas"]) == 30, "synthetic spectrum length")

    with open(matrix, "w") as f:
        for i in range(8):
            f.write(",".join(str(1.0 + 0.1 * ((i * 7 + j) % 5))
                             for j in range(4)) + "\n")
    cov = os.path.join(tmp, "cov.csv")
    run("shrink", "--matrix", matrix, "--cov-out", cov, "--format", "json")
    check(os.path.exists(cov), "covariance file written")
    check(not os.path.exists(cov + ".tmp"), "no temp file left behind")
    with open(cov) as f:
        rows = [line.split(",") for line in f.read().strip().splitlines()]
    check(len(rows) == 4 and len(rows[0]) == 4, "covariance shape")
    sym_gap = abs(float(rows[0][1]) - float(rows[1][0]))
    check(sym_gap < 1e-9, "covariance symmetric")

    # loss
    out = run("loss", "--gamma", "1", "--spikes", "5", "--shrinker",
              "identity", "--format", "json").stdout
    doc = json.loads(out)
    check(abs(doc["kappa"] - 5.0) < 1e-9, "loss kappa identity")
    check(abs(doc["regret_kappa_pct"] - 16.808164) < 1e-4, "loss regret")

    # sweep: header, determinism, usage errors
    out = run("sweep", "--gammas", "0.7", "--shrinkers", "single").stdout
    lines = out.strip().splitlines()
    check(lines[0] ==
          "gamma,shrinker,max_regret_kappa_pct,max_regret_rsrg_pct,argmax_ell",
          "sweep header")
    check(float(lines[1].split(",")[2]) <= 1e-6, "single regret 0 at 0.7")
    out2 = run("sweep", "--gammas", "0.7", "--shrinkers", "single").stdout
    check(out == out2, "sweep deterministic")
    run("sweep", "--shrinkers", "", expect=1)
    run("sweep", "--gammas", "0.5,zebra", expect=1)

    # simulate: determinism, check mode, usage errors
    args = ("simulate", "--spikes", "5", "--gamma", "0.5", "--n", "300",
            "--reps", "4", "--seed", "9", "--shrinker", "single")
    out = run(*args).stdout
    out2 = run(*args).stdout
    check(out == out2, "simulate byte-identical for a fixed seed")
    doc = json.loads(out)
    check(doc["p"] == 150 and doc["n"] == 300, "simulate shape")
    check(len(doc["per_rep"]) == 4, "simulate per_rep")
    run("simulate", "--spikes", "5", "--gamma", "0.5", "--n", "300",
        "--reps", "0", expect=1)
    # --check with an absurd tolerance fails with exit 2
    run(*args, "--check", "--tolerance", "1e-12", expect=2)

    # worstcase: exact case has ratio 1; sampled case ties the bound
    out = run("worstcase", "--exact", "--p", "40", "--spikes", "5",
              "--gamma", "1").stdout
    doc = json.loads(out)
    check(abs(doc["achieved_ratio"] - 1.0) < 1e-9, "exact ratio 1")
    out = run("worstcase", "--p", "60", "--spikes", "5", "--gamma", "1",
              "--seed", "4").stdout
    doc = json.loads(out)
    check(abs(doc["achieved_ratio"] - doc["kantorovich_bound"]) <= 1e-8,
          "Kantorovich equality")

    # --out writes atomically
    target = os.path.join(tmp, "report.csv")
    run("thresholds", "--gamma", "1", "--out", target)
    check(os.path.exists(target) and not os.path.exists(target + ".tmp"),
          "atomic --out")

    if failures:
        print("FAILED CLI checks:")
        for f in failures:
            print("  -", f)
        return 1
    print("all CLI checks passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
