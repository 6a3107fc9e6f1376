"""Builds the beam-file evaluation fixture from hypotheses.json.

Writes gold.json (Spider dev shape), pred.jsonl (beam rows, best first) and
oracle.json. The oracle runs every hypothesis SQL directly with sqlite3 and
compares it with the gold result, independently of the Rust pipeline.
Entries marked {"corrupt": sql} are encoded and then given an out-of-range
column, so they count as invalid hypotheses.

Run from the repository root: python3 fixtures/eval/build.py
"""

import json
import math
import os
import sqlite3
import subprocess

HERE = os.path.dirname(os.path.abspath(__file__))
ROOT = os.path.dirname(os.path.dirname(HERE))
DBS = os.path.join(ROOT, "fixtures", "databases")
KS = (1, 3, 5)


def db_path(db_id):
    return os.path.join(DBS, db_id, f"{db_id}.sqlite")


def encode(db_id, question, sqls, example):
    out = subprocess.run(
        ["cargo", "run", "-q", "-p", "nldb-cli", "--", "encode", "--db", db_path(db_id),
         "--question", question, "--example", str(example), *sqls],
        cwd=ROOT, check=True, capture_output=True, text=True,
    ).stdout
    return [json.loads(line) for line in out.splitlines() if line.strip()]


def close(a, b):
    if isinstance(a, (int, float)) and isinstance(b, (int, float)):
        return math.isclose(a, b, rel_tol=1e-6, abs_tol=1e-6)
    return a == b


def key(row):
    return [(1, round(v * 1e4), "") if isinstance(v, (int, float)) else (0 if v is None else 2, 0, str(v)) for v in row]


def same(gold, got, ordered):
    if len(gold) != len(got) or (gold and len(gold[0]) != len(got[0])):
        return False
    if not ordered:
        gold, got = sorted(gold, key=key), sorted(got, key=key)
    return all(len(x) == len(y) and all(close(p, q) for p, q in zip(x, y)) for x, y in zip(gold, got))


def main():
    cases = json.load(open(os.path.join(HERE, "hypotheses.json")))
    gold, rows, first_correct = [], [], []
    invalid = 0
    for i, case in enumerate(cases):
        gold.append({"db_id": case["db_id"], "question": case["question"], "query": case["query"]})
        sqls = [h if isinstance(h, str) else h["corrupt"] for h in case["hypotheses"]]
        encoded = encode(case["db_id"], case["question"], sqls, i)
        conn = sqlite3.connect(f"file:{db_path(case['db_id'])}?mode=ro", uri=True)
        want = conn.execute(case["query"]).fetchall()
        ordered = "order by" in case["query"].lower()
        hit = None
        for rank, (h, row) in enumerate(zip(case["hypotheses"], encoded)):
            if not isinstance(h, str):
                at = next(j for j, t in enumerate(row["actions"]) if t.startswith("SC:"))
                row["actions"][at] = "SC:99999"
                invalid += 1
            elif hit is None and same(want, conn.execute(h).fetchall(), ordered):
                hit = rank + 1
            rows.append(row)
        first_correct.append(hit)
    top = {f"top{k}": sum(1 for r in first_correct if r is not None and r <= k) for k in KS}
    oracle = {"examples": len(cases), **top, "invalid": invalid, "first_correct": first_correct}
    with open(os.path.join(HERE, "gold.json"), "w") as f:
        json.dump(gold, f, indent=1)
        f.write("\n")
    with open(os.path.join(HERE, "pred.jsonl"), "w") as f:
        f.writelines(json.dumps(r) + "\n" for r in rows)
    with open(os.path.join(HERE, "oracle.json"), "w") as f:
        json.dump(oracle, f, indent=1)
        f.write("\n")
    print(json.dumps({k: v for k, v in oracle.items() if k != "first_correct"}))


if __name__ == "__main__":
    main()
