"""Regenerates the fixture databases, tables.json and the gold corpus.

Usage: python3 fixtures/generate.py
"""

import json
import random
import re
import sqlite3
from pathlib import Path

from corpus import CORPUS
from schemas import SCHEMAS

ROOT = Path(__file__).resolve().parent


def spider_type(declared):
    t = declared.lower()
    if any(k in t for k in ("int", "real", "num", "floa", "doub")):
        return "number"
    if "date" in t or "time" in t:
        return "time"
    return "text"


def build(db_id, fn):
    out = ROOT / "databases" / db_id / f"{db_id}.sqlite"
    out.parent.mkdir(parents=True, exist_ok=True)
    if out.exists():
        out.unlink()
    ddl, rows = fn(random.Random(db_id))
    conn = sqlite3.connect(out)
    conn.executescript(ddl)
    for table, data in rows.items():
        if not data:
            continue
        marks = ",".join("?" * len(data[0]))
        conn.executemany(f"INSERT INTO {table} VALUES ({marks})", data)
    conn.commit()
    (out.parent / "schema.sql").write_text(ddl.strip() + "\n")
    return conn


def spider_entry(db_id, conn):
    tables = [r[0] for r in conn.execute("SELECT name FROM sqlite_master WHERE type='table' ORDER BY rowid")]
    cols, types, pks, fks = [[-1, "*"]], ["text"], [], []
    index = {}
    for ti, t in enumerate(tables):
        for cid, name, declared, _, _, pk in conn.execute(f"PRAGMA table_info({t})"):
            index[(t.lower(), name.lower())] = len(cols)
            if pk:
                pks.append(len(cols))
            cols.append([ti, name])
            types.append(spider_type(declared))
    for t in tables:
        for row in conn.execute(f"PRAGMA foreign_key_list({t})"):
            fks.append([index[(t.lower(), row[3].lower())], index[(row[2].lower(), row[4].lower())]])
    human = lambda s: re.sub(r"(?<=[a-z])(?=[A-Z])", " ", s).replace("_", " ").lower()
    return {
        "db_id": db_id,
        "table_names_original": tables,
        "table_names": [human(t) for t in tables],
        "column_names_original": cols,
        "column_names": [[c[0], human(c[1]) if c[0] >= 0 else "*"] for c in cols],
        "column_types": types,
        "primary_keys": pks,
        "foreign_keys": fks,
    }


def main():
    conns = {db: build(db, fn) for db, fn in SCHEMAS.items()}
    (ROOT / "tables.json").write_text(json.dumps([spider_entry(db, c) for db, c in conns.items()], indent=1) + "\n")
    gold = []
    seen = set()
    for db, question, sql in CORPUS:
        assert (db, question) not in seen, question
        seen.add((db, question))
        rows = conns[db].execute(sql).fetchall()
        if not rows:
            print(f"note: empty result for {db}: {question}")
        gold.append({"db_id": db, "question": question, "query": sql})
    (ROOT / "corpus").mkdir(exist_ok=True)
    (ROOT / "corpus" / "dev.json").write_text(json.dumps(gold, indent=1) + "\n")
    print(f"{len(conns)} databases, {len(gold)} questions")


if __name__ == "__main__":
    main()
