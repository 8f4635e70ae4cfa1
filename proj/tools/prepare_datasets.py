#!/usr/bin/env python3
"""Builds the CSV corpus under data/.

Sources, in order of preference:
  1. scikit-learn's bundled copies of the UCI files (iris, wine,
     breast-cancer-diagnostic, optical digits).
  2. Rule-generated datasets whose UCI files are complete enumerations of a
     documented generating process (balance-scale, tic-tac-toe endgame).
     Both are regenerated from the rule and checked against the published
     row and class counts.
  3. Official UCI files dropped into data/uci/ by the user (seeds,
     banknote-authentication, hayes-roth), converted into the same schema.

Usage: python3 tools/prepare_datasets.py [--out data]
"""

import argparse
import csv
import itertools
import os
import sys


def write_csv(path, header, rows):
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(header)
        w.writerows(rows)
    print(f"wrote {path} ({len(rows)} rows)")


def fmt(v):
    if isinstance(v, float):
        return repr(v)
    return v


def export_sklearn(out):
    from sklearn.datasets import load_breast_cancer, load_digits, load_iris, load_wine

    specs = [
        ("iris.csv", load_iris(), lambda t: t),
        ("wine.csv", load_wine(), lambda t: t),
        ("breast_cancer.csv", load_breast_cancer(), lambda t: t),
        ("digits.csv", load_digits(), lambda t: f"d{t}"),
    ]
    for fname, bunch, label_of in specs:
        names = [str(n).replace(" ", "_") for n in bunch.feature_names] if hasattr(bunch, "feature_names") else None
        if names is None:  # digits has no feature_names in older sklearn
            names = [f"px{i}" for i in range(bunch.data.shape[1])]
        header = names + ["class"]
        target_names = getattr(bunch, "target_names", None)
        rows = []
        for x, y in zip(bunch.data, bunch.target):
            label = target_names[y] if target_names is not None else y
            rows.append([fmt(float(v)) for v in x] + [label_of(str(label))])
        write_csv(os.path.join(out, fname), header, rows)


def gen_balance_scale(out):
    # Complete enumeration: class = side with larger weight*distance torque.
    rows = []
    for lw, ld, rw, rd in itertools.product(range(1, 6), repeat=4):
        left, right = lw * ld, rw * rd
        cls = "B" if left == right else ("L" if left > right else "R")
        rows.append([lw, ld, rw, rd, cls])
    assert len(rows) == 625
    counts = {c: sum(1 for r in rows if r[4] == c) for c in "LBR"}
    assert counts == {"L": 288, "B": 49, "R": 288}, counts
    write_csv(
        os.path.join(out, "balance_scale.csv"),
        ["left_weight", "left_distance", "right_weight", "right_distance", "class"],
        rows,
    )


def gen_tic_tac_toe(out):
    # All distinct terminal boards of tic-tac-toe with x to move first and
    # play stopping at the first three-in-a-row. Class: does x win.
    lines = [
        (0, 1, 2), (3, 4, 5), (6, 7, 8),
        (0, 3, 6), (1, 4, 7), (2, 5, 8),
        (0, 4, 8), (2, 4, 6),
    ]

    def winner(board):
        for a, b, c in lines:
            if board[a] != "b" and board[a] == board[b] == board[c]:
                return board[a]
        return None

    terminal = set()

    def play(board, player):
        w = winner(board)
        if w is not None or "b" not in board:
            terminal.add(tuple(board))
            return
        for i, cell in enumerate(board):
            if cell == "b":
                board[i] = player
                play(board, "o" if player == "x" else "x")
                board[i] = "b"

    play(["b"] * 9, "x")
    boards = sorted(terminal)
    rows = [list(b) + ["positive" if winner(b) == "x" else "negative"] for b in boards]
    assert len(rows) == 958, len(rows)
    pos = sum(1 for r in rows if r[9] == "positive")
    assert pos == 626, pos
    draws = sum(1 for b in boards if winner(b) is None)
    assert draws == 16, draws
    cells = ["tl", "tm", "tr", "ml", "mm", "mr", "bl", "bm", "br"]
    write_csv(os.path.join(out, "tic_tac_toe.csv"), cells + ["class"], rows)


def convert_uci(out):
    """Converts official UCI files, if present under data/uci/."""
    uci = os.path.join(out, "uci")

    seeds = os.path.join(uci, "seeds_dataset.txt")
    if os.path.exists(seeds):
        rows = []
        with open(seeds) as f:
            for line in f:
                parts = line.split()
                if not parts:
                    continue
                assert len(parts) == 8, parts
                rows.append(parts[:7] + [f"variety_{parts[7].split('.')[0]}"])
        write_csv(
            os.path.join(out, "seeds.csv"),
            ["area", "perimeter", "compactness", "kernel_length",
             "kernel_width", "asymmetry", "groove_length", "class"],
            rows,
        )

    banknote = os.path.join(uci, "data_banknote_authentication.txt")
    if os.path.exists(banknote):
        rows = []
        with open(banknote) as f:
            for line in f:
                parts = line.strip().split(",")
                if len(parts) != 5:
                    continue
                rows.append(parts[:4] + ["forged" if parts[4] == "1" else "genuine"])
        write_csv(
            os.path.join(out, "banknote.csv"),
            ["variance", "skewness", "curtosis", "entropy", "class"],
            rows,
        )

    hayes = os.path.join(uci, "hayes-roth.data")
    if os.path.exists(hayes):
        rows = []
        with open(hayes) as f:
            for line in f:
                parts = line.strip().split(",")
                if len(parts) != 6:
                    continue
                rows.append(parts[:5] + [f"cls{parts[5]}"])
        write_csv(
            os.path.join(out, "hayes_roth.csv"),
            ["name", "hobby", "age", "educational_level", "marital_status", "class"],
            rows,
        )


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=os.path.join(os.path.dirname(__file__), "..", "data"))
    args = ap.parse_args()
    out = os.path.abspath(args.out)
    os.makedirs(out, exist_ok=True)
    export_sklearn(out)
    gen_balance_scale(out)
    gen_tic_tac_toe(out)
    convert_uci(out)


if __name__ == "__main__":
    sys.exit(main())
