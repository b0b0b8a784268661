"""Runs the CLI and validates every report and record it writes against docs/report.schema.json."""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema


def run(cli, *args):
    proc = subprocess.run([cli, *args], capture_output=True, text=True, check=False)
    try:
        return json.loads(proc.stdout)
    except json.JSONDecodeError:
        sys.exit(f"{' '.join(args)} printed no report: {proc.stderr}")


def main():
    cli, schema_path = sys.argv[1], sys.argv[2]
    schema = json.loads(pathlib.Path(schema_path).read_text())
    validator = jsonschema.Draft202012Validator(schema)

    with tempfile.TemporaryDirectory() as tmp:
        findings = pathlib.Path(tmp) / "findings"
        docs = [
            run(cli, "sweep", "--trials", "3", "--seed", "5"),
            run(cli, "--no-timestamp", "verify", "--theorem", "log-fejer", "--f", "square", "--p", "one"),
            run(cli, "verify", "--theorem", "nope"),
            run(cli, "--seed", "2", "hunt", "--theorem", "scalar-levin-steckin",
                "--perturb", "drop-monotone-weight", "--trials", "20",
                "--findings-dir", str(findings)),
        ]
        docs += [json.loads(p.read_text()) for p in sorted(findings.glob("*.json"))]

        failures = 0
        for doc in docs:
            for err in validator.iter_errors(doc):
                failures += 1
                print(f"{list(err.absolute_path)}: {err.message}")
            if "summary" in doc:
                s = doc["summary"]
                parts = s["pass"] + s["violated"] + s["hypothesis-unmet"] + s["error"]
                if parts != s["total"] or s["total"] != len(doc["results"]):
                    failures += 1
                    print("summary does not partition the results")
        print(f"{len(docs)} documents checked, {failures} problems")
        return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
