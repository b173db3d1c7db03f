"""Runs each ffprog subcommand and validates its JSON against docs/report-schema.json."""

import json
import subprocess
import sys

from jsonschema import Draft202012Validator

COMMANDS = [
    (["classify", "--p", "3", "--n", "2", "--element", "0,1"], {0}, "element_profile"),
    (["classify", "--q", "9", "--n", "2"], {0}, "element_profile"),
    (["search", "--p", "7", "--n", "1", "--m", "2", "--r", "1,1", "--beta", "1", "--no-normality"], {1}, "search_report"),
    (["search", "--p", "11", "--n", "2", "--m", "2", "--k", "1", "--count"], {0, 1}, "search_report"),
    (["search", "--p", "13", "--n", "2", "--m", "2", "--position", "2"], {0, 1}, "search_report"),
    (["bounds", "--p", "3", "--n", "4", "--m", "3", "--k", "2", "--r", "2,2,2"], {1}, "bound_report"),
    (["bounds", "--criterion", "asymptotic", "--q", "79", "--n", "379", "--m", "3", "--k", "2", "--r", "2",
      "--N", "3", "--e", "265"], {0}, "bound_report"),
    (["sieve", "--q", "79", "--n", "13", "--p0-scan"], {0}, "bound_report"),
    (["sieve", "--q", "3", "--n", "7", "--p0", "5"], {1}, "bound_report"),
    (["sweep", "--q-min", "3", "--q-max", "11", "--n-min", "1", "--n-max", "2", "--m", "2", "--count"], {0, 1}, "sweep"),
    (["sweep", "--q-min", "3", "--q-max", "9", "--n-min", "2", "--n-max", "2", "--m", "3", "--k", "2", "--r", "2"],
     {0, 1}, "sweep"),
    (["replicate-sec4"], {0}, "section4_replication"),
    (["verify-chars", "--p", "3", "--n", "2", "--rs", "1,2,4"], {0}, "weil_reports"),
]


def main() -> int:
    binary, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path) as fh:
        schema = json.load(fh)
    Draft202012Validator.check_schema(schema)
    validator = Draft202012Validator(schema)
    failures = 0
    for args, codes, kind in COMMANDS:
        proc = subprocess.run([binary, *args], capture_output=True, text=True)
        label = " ".join(args)
        if proc.returncode not in codes:
            print(f"FAIL {label}: exit {proc.returncode}: {proc.stderr.strip()}")
            failures += 1
            continue
        doc = json.loads(proc.stdout)
        errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
        if doc.get("kind") != kind:
            errors.append(f"kind {doc.get('kind')!r} != {kind!r}")
        if json.loads(json.dumps(doc)) != doc:
            errors.append("round trip changed the document")
        if errors:
            failures += 1
            print(f"FAIL {label}: {errors[0]}")
        else:
            print(f"ok   {label}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
