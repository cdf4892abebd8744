#!/usr/bin/env python3
"""Prepare the optional benchmark datasets in the layout the acceptance suite reads.

Layout, one directory per dataset under the output root::

    <root>/restaurants/left.csv    id,text
    <root>/restaurants/right.csv   id,text
    <root>/restaurants/truth.csv   left,right

Then run ``PREFJOIN_DATA=<root> pytest tests/test_acceptance.py -k criterion_8``.

restaurants
    The Fodors/Zagat restaurant pair, as distributed with the DeepMatcher
    benchmark (Structured/Fodors-Zagats: tableA.csv, tableB.csv and
    train/valid/test.csv with ltable_id, rtable_id, label). Download it
    yourself and pass the directory. Text is name, address and city joined by
    spaces; phone and cuisine type are dropped. Tokenize with words.

wiki_editors
    No stable public mirror is known to us. Pass two files with an id column
    and a name column, plus a truth file whose first two columns are matching
    ids. Tokenize with 2-grams.

Nothing is downloaded automatically; the script only converts local files.
"""

import argparse
import csv
from pathlib import Path


def write_rows(path, header, rows):
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)


def read_dicts(path):
    with path.open(newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def restaurants(src: Path, out: Path):
    def side(name):
        return [(r["id"], " ".join(r[c] for c in ("name", "addr", "city"))) for r in read_dicts(src / name)]

    truth = set()
    for split in ("train.csv", "valid.csv", "test.csv"):
        if (src / split).exists():
            truth |= {(r["ltable_id"], r["rtable_id"]) for r in read_dicts(src / split) if r["label"] == "1"}
    write_rows(out / "left.csv", ["id", "text"], side("tableA.csv"))
    write_rows(out / "right.csv", ["id", "text"], side("tableB.csv"))
    write_rows(out / "truth.csv", ["left", "right"], sorted(truth))
    print(f"restaurants: {len(truth)} true pairs -> {out}")


def generic(left: Path, right: Path, truth: Path, id_col: str, text_col: str, out: Path):
    for src, name in ((left, "left.csv"), (right, "right.csv")):
        write_rows(out / name, ["id", "text"], [(r[id_col], r[text_col]) for r in read_dicts(src)])
    with truth.open(newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))[1:]
    write_rows(out / "truth.csv", ["left", "right"], [r[:2] for r in rows if len(r) >= 2])
    print(f"{out.name}: {len(rows)} true pairs -> {out}")


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    p.add_argument("--out", type=Path, required=True, help="output root (use as PREFJOIN_DATA)")
    sub = p.add_subparsers(dest="which", required=True)
    r = sub.add_parser("restaurants")
    r.add_argument("src", type=Path, help="directory with tableA.csv, tableB.csv and the split files")
    w = sub.add_parser("wiki_editors")
    for name in ("left", "right", "truth"):
        w.add_argument(f"--{name}", type=Path, required=True)
    w.add_argument("--id-col", default="id")
    w.add_argument("--text-col", default="name")
    args = p.parse_args(argv)
    if args.which == "restaurants":
        restaurants(args.src, args.out / "restaurants")
    else:
        generic(args.left, args.right, args.truth, args.id_col, args.text_col, args.out / "wiki_editors")


if __name__ == "__main__":
    main()
