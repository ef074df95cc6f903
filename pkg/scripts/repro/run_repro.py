#!/usr/bin/env python3
# For command line usage help, call this script with the flag "-h"
import argparse
import sys
from pathlib import Path
from wahl_blowdown.manifest import default_manifest, read_manifest


# Define here the functionality of the script
def main(manifest_path: Path | None) -> int:
    manifest = read_manifest(manifest_path) if manifest_path else default_manifest()
    results = manifest.run()
    for result in results:
        print(result.line())
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)} of {len(results)} checks passed")
    return 1 if failed else 0


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="Runs the reproduction manifest")
    # optional manifest file, relative paths inside it resolve against its directory
    parser.add_argument(
        "-m",
        metavar="MANIFEST",
        type=Path,
        default=None,
        help="Manifest file (default: the bundled checks)",
    )

    # -- Reading out the arguments the user entered --
    manifest_path = parser.parse_args().m

    # -- Calling main function --
    sys.exit(main(manifest_path))
