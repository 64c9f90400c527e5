#!/usr/bin/env python3
"""Generate a synthetic library catalog in the JSONL ingest format."""

import argparse
import json
import random
import sys

SUBJECTS = [
    "Indigenous Peoples", "The French Revolution", "Plains Nations", "The Bastille",
    "Treaty History", "Colonial Archives", "Prairie Winters", "Voyageur Routes",
    "Liberty and Law", "Empire and Rebellion", "Oral Histories", "Map Making",
]
QUALIFIERS = [
    "A Short History", "An Introduction", "Collected Essays", "A Field Guide",
    "Primary Sources", "The Illustrated Edition", "For Young Readers", "Revisited",
]
SURNAMES = ["Crowfoot", "Duval", "Okimaw", "Laurent", "Bearpaw", "Mills", "Beaufort", "Arcand"]
TYPES = ["book"] * 6 + ["dvd", "audiobook", "magazine", "music", "other"]


def make_record(rng: random.Random, i: int) -> dict:
    subject = rng.choice(SUBJECTS)
    record = {
        "id": f"r{i:05d}",
        "title": f"{subject}: {rng.choice(QUALIFIERS)}",
        "authors": [f"{rng.choice('ABCDEFGHJKLM')}. {rng.choice(SURNAMES)}"
                    for _ in range(rng.randint(0, 2))],
        "type": rng.choice(TYPES),
    }
    if rng.random() < 0.9:
        record["year"] = rng.randint(1950, 2024)
    if rng.random() < 0.6:
        record["description"] = f"{subject} told through {rng.choice(['letters', 'maps', 'interviews', 'photographs'])}."
    if rng.random() < 0.4:
        record["cover_ref"] = f"covers/r{i:05d}.jpg"
    return record


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=200)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--out", default="-", help="output path, or - for stdout")
    args = parser.parse_args()

    rng = random.Random(args.seed)
    out = sys.stdout if args.out == "-" else open(args.out, "w", encoding="utf-8")
    try:
        for i in range(args.count):
            out.write(json.dumps(make_record(rng, i), ensure_ascii=False) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
