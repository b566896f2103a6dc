"""Regenerate the checked-in test fixture embedding files.

Writes the same small hand-picked vocabulary in both supported formats:
word2vec text (with a count/dimension header) and word2vec binary.
Run from the repository root:

    python3 scripts/make_fixture_embeddings.py
"""

import struct
from pathlib import Path

VOCABULARY = [
    # optics cluster (doc1)
    ("laser", (1.0, 0.0)),
    ("optics", (0.8, 0.6)),
    ("beam", (0.6, 0.8)),
    ("quality", (0.0, 1.0)),
    ("power", (0.9, 0.1)),
    # learning cluster (doc2)
    ("neural", (0.7, 0.7)),
    ("network", (0.6, 0.8)),
    ("networks", (0.55, 0.85)),
    ("deep", (0.75, 0.65)),
    ("learning", (0.65, 0.75)),
    ("training", (0.2, 0.9)),
    ("data", (0.1, 0.95)),
    # graph cluster (doc3)
    ("graph", (0.9, 0.3)),
    ("algorithms", (0.85, 0.4)),
    ("rank", (0.8, 0.5)),
    ("candidate", (0.3, 0.9)),
    ("phrase", (0.25, 0.95)),
    ("ranking", (0.75, 0.55)),
    ("method", (0.5, 0.5)),
    ("random", (0.4, 0.8)),
    ("walk", (0.45, 0.75)),
]

DIMENSION = 2


def write_text(path: Path) -> None:
    lines = [f"{len(VOCABULARY)} {DIMENSION}"]
    for word, vector in VOCABULARY:
        joined = " ".join(str(x) for x in vector)
        lines.append(f"{word} {joined}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_binary(path: Path) -> None:
    with path.open("wb") as fh:
        fh.write(f"{len(VOCABULARY)} {DIMENSION}\n".encode("ascii"))
        for word, vector in VOCABULARY:
            fh.write(word.encode("utf-8") + b" ")
            fh.write(struct.pack(f"<{DIMENSION}f", *vector))
            fh.write(b"\n")


def main() -> None:
    fixtures = Path(__file__).resolve().parent.parent / "tests" / "fixtures"
    fixtures.mkdir(parents=True, exist_ok=True)
    write_text(fixtures / "vectors.txt")
    write_binary(fixtures / "vectors.bin")
    print(f"wrote {len(VOCABULARY)} vectors to {fixtures}")


if __name__ == "__main__":
    main()
