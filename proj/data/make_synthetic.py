#!/usr/bin/env python3
"""Generates synthetic_1k.tsv: a small binary user-item set with community
structure and skewed item popularity. Every user has at least 10 items."""
import random

SEED = 20240601
USERS = 80
ITEMS = 200
COMMUNITIES = 4
PER_USER = (10, 16)
IN_COMMUNITY = 0.85


def main():
    rng = random.Random(SEED)
    items_by_comm = [[i for i in range(ITEMS) if i % COMMUNITIES == c] for c in range(COMMUNITIES)]
    popularity = [1.0 / (1 + rank) ** 0.7 for rank in range(ITEMS)]
    rng.shuffle(popularity)
    rows = []
    for u in range(USERS):
        comm = u % COMMUNITIES
        want = rng.randint(*PER_USER)
        chosen = set()
        while len(chosen) < want:
            pool = items_by_comm[comm] if rng.random() < IN_COMMUNITY else range(ITEMS)
            pool = list(pool)
            chosen.add(rng.choices(pool, weights=[popularity[i] for i in pool])[0])
        rows.extend((f"user{u:03d}", f"item{i:03d}") for i in sorted(chosen))
    with open("synthetic_1k.tsv", "w") as f:
        f.write("# user\titem (binary)\n")
        for u, i in rows:
            f.write(f"{u}\t{i}\n")
    print(len(rows), "edges")


if __name__ == "__main__":
    main()
