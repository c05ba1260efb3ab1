"""Write DOT files for the small tournaments, the four basic tournaments and
the non-unique 5-node classes."""

import argparse
from pathlib import Path

from tracktour.tournament import Tournament, basic_tournament, unique_census


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("out", type=Path)
    args = p.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    graphs = {}
    for n in (1, 2, 3):
        for i, t in enumerate(unique_census(n).unique_tournaments()):
            graphs[f"small_{n}_{i}"] = t
    for size in (1, 3, 4, 5):
        graphs[f"basic_{size}"] = basic_tournament(size)
    census = unique_census(5)
    for sv in sorted(census.non_unique_score_vectors):
        tag = "".join(map(str, sv))
        for i, form in enumerate(census.classes[sv]):
            graphs[f"nonunique_{tag}_{i}"] = Tournament.from_code(5, int(form, 2))

    for name, t in graphs.items():
        (args.out / f"{name}.dot").write_text(t.to_dot(name))
    print(f"wrote {len(graphs)} graphs to {args.out}")


if __name__ == "__main__":
    main()
