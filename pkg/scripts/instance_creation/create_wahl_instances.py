#!/usr/bin/env python3
# For command line usage help, call this script with the flag "-h"
import argparse
import json
from pathlib import Path
from wahl_blowdown.plumbing import PlumbingGraph, wahl_tree
from wahl_blowdown.seifert import plumbing_to_seifert


def write_graph(g: PlumbingGraph, path: Path):
    # ids are 1-based in the bundled files
    data = g.to_json()
    for v in data["vertices"]:
        v["id"] += 1
    data["edges"] = [[i + 1, j + 1] for i, j in data["edges"]]
    with open(path, "w") as f:
        json.dump(data, f, indent=2)
        f.write("\n")


def main(values: list[int], output_dir: Path):
    output_dir.mkdir(parents=True, exist_ok=True)
    for r in values:
        g = wahl_tree(r)
        write_graph(g, output_dir / f"wahl_r{r}.json")
        with open(output_dir / f"seifert_wahl_r{r}.json", "w") as f:
            json.dump(plumbing_to_seifert(g).to_json(), f)
            f.write("\n")
        print(f"r = {r}: {g.num_vertices()} vertices")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(
        description="Writes Wahl-type trees and their Seifert data as json instances"
    )
    parser.add_argument(
        "r",
        metavar="R",
        type=int,
        nargs="+",
        help="Even values r >= 2 of the trees to write",
    )
    parser.add_argument(
        "-o",
        metavar="DIR",
        type=Path,
        default=Path(__file__).parent.parent.parent / "instances/generated",
        help="Output directory",
    )

    # -- Reading out the arguments the user entered --
    args = parser.parse_args()

    # -- Calling main function --
    main(args.r, args.o)
