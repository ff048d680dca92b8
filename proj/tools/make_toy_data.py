#!/usr/bin/env python3
"""Regenerates the bundled synthetic corpora and datasets under data/.

Output is deterministic; rerunning overwrites the files byte-for-byte.
"""

import pathlib
import random

DATA = pathlib.Path(__file__).resolve().parent.parent / "data"

ANIMALS = ["cat", "dog", "horse", "cow", "sheep", "goat", "pig", "lion", "tiger", "wolf"]
MACHINES = ["cpu", "gpu", "disk", "memory", "cache", "kernel", "driver", "socket", "thread", "compiler"]

CAPITALS = [
    ("paris", "france"), ("rome", "italy"), ("berlin", "germany"), ("madrid", "spain"),
    ("lisbon", "portugal"), ("vienna", "austria"), ("athens", "greece"), ("oslo", "norway"),
]
FRUITS = ["apple", "pear", "plum", "cherry", "grape", "peach"]
VERBS = ["eats", "likes", "wants", "buys"]
PEOPLE = ["anna", "bruno", "clara", "diego", "elena", "felix"]


def two_cluster(rng):
    lines = []
    for i in range(100):
        group = ANIMALS if i % 2 == 0 else MACHINES
        n = rng.randint(12, 20)
        lines.append(" ".join(rng.choice(group) for _ in range(n)))
    return lines


def toy(rng):
    lines = []
    for _ in range(3000):
        kind = rng.random()
        if kind < 0.35:
            city, country = rng.choice(CAPITALS)
            lines.append(rng.choice([
                f"{city} is the capital of {country}",
                f"the capital of {country} is {city}",
                f"people in {city} love {country}",
            ]))
        elif kind < 0.7:
            lines.append(f"{rng.choice(PEOPLE)} {rng.choice(VERBS)} a {rng.choice(FRUITS)} and a {rng.choice(FRUITS)}")
        else:
            group = rng.choice([ANIMALS, MACHINES])
            lines.append(" ".join(rng.choice(group) for _ in range(rng.randint(4, 9))))
    return lines


def similarity_pairs(rng):
    rows = []
    for group in (ANIMALS, MACHINES, FRUITS):
        for _ in range(6):
            a, b = rng.sample(group, 2)
            rows.append((a, b, round(rng.uniform(7.0, 9.5), 2)))
    for _ in range(12):
        a = rng.choice(ANIMALS + FRUITS)
        b = rng.choice(MACHINES)
        rows.append((a, b, round(rng.uniform(0.5, 3.0), 2)))
    rows.append(("cat", "unicorn", 5.0))
    return rows


def analogies():
    out = [": capital-country"]
    for i, (c1, k1) in enumerate(CAPITALS):
        for c2, k2 in CAPITALS[i + 1:i + 4]:
            out.append(f"{c1} {k1} {c2} {k2}")
    out.append(": oov")
    out.append("paris france atlantis nowhere")
    return out


def main():
    DATA.mkdir(exist_ok=True)
    rng = random.Random(20161016)
    (DATA / "two_cluster.txt").write_text("\n".join(two_cluster(rng)) + "\n")
    (DATA / "toy_corpus.txt").write_text("\n".join(toy(rng)) + "\n")
    (DATA / "toy_similarity.txt").write_text(
        "".join(f"{a}\t{b}\t{s}\n" for a, b, s in similarity_pairs(rng)))
    (DATA / "toy_analogy.txt").write_text("\n".join(analogies()) + "\n")
    (DATA / "two_cluster_groups.txt").write_text(
        "a " + " ".join(ANIMALS) + "\n" + "b " + " ".join(MACHINES) + "\n")


if __name__ == "__main__":
    main()
