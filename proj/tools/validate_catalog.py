"""Validate `ontology-lab list --json` against the catalog schema."""
import json
import subprocess
import sys

import jsonschema


def main() -> int:
    binary, schema_path = sys.argv[1], sys.argv[2]
    out = subprocess.run([binary, "list", "--json"], check=True, capture_output=True, text=True).stdout
    catalog = json.loads(out)
    with open(schema_path) as f:
        schema = json.load(f)
    jsonschema.validate(catalog, schema)
    names = [e["name"] for e in catalog["experiments"]]
    if len(names) != 10 or len(set(names)) != 10:
        print(f"expected 10 distinct experiments, got {names}")
        return 1
    print(f"catalog valid: {len(names)} experiments")
    return 0


if __name__ == "__main__":
    sys.exit(main())
