#!/usr/bin/env python3
"""Plain DPLL solver reading DIMACS on stdin or from a path argument."""
import sys


def parse(text):
    n, clauses, cur = 0, [], []
    for line in text.splitlines():
        line = line.strip()
        if not line or line[0] in "c%":
            continue
        if line[0] == "p":
            n = int(line.split()[2])
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(cur)
                cur = []
            else:
                cur.append(lit)
    if cur:
        clauses.append(cur)
    return n, clauses


def dpll(clauses, assign):
    while True:
        unit = None
        for c in clauses:
            if any(assign.get(abs(l)) == (l > 0) for l in c):
                continue
            free = [l for l in c if abs(l) not in assign]
            if not free:
                return False
            if len(free) == 1:
                unit = free[0]
                break
        if unit is None:
            break
        assign[abs(unit)] = unit > 0
    for c in clauses:
        if any(assign.get(abs(l)) == (l > 0) for l in c):
            continue
        var = next(abs(l) for l in c if abs(l) not in assign)
        for value in (True, False):
            trial = dict(assign)
            trial[var] = value
            if dpll(clauses, trial):
                assign.clear()
                assign.update(trial)
                return True
        return False
    return True


def main():
    text = open(sys.argv[1]).read() if len(sys.argv) > 1 else sys.stdin.read()
    n, clauses = parse(text)
    sys.setrecursionlimit(10000)
    assign = {}
    if dpll(clauses, assign):
        print("s SATISFIABLE")
        lits = [v if assign.get(v, False) else -v for v in range(1, n + 1)]
        print("v " + " ".join(map(str, lits)) + " 0")
    else:
        print("s UNSATISFIABLE")


main()
