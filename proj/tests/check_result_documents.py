#!/usr/bin/env python3
"""Run drk on the sample models and check the machine result documents.

usage: check_result_documents.py <drk> <samples_dir> <result-schema.json>

For every applicable (command, sample) pair: the document validates against
the schema, repeated runs are byte-identical, input.sha256 matches the file,
and brute-force output does not depend on --threads. Malformed input must exit
with status 1.
"""

import hashlib
import json
import subprocess
import sys
import tempfile
from pathlib import Path


def run(drk, args, expect=0):
    p = subprocess.run([drk, *args], capture_output=True)
    if p.returncode != expect:
        raise AssertionError(f"{' '.join(args)}: exit {p.returncode}, expected {expect}\n{p.stderr.decode()}")
    return p.stdout


def commands_for(model):
    cmds = [["k0"], ["condition-m"], ["condition-m", "--brute-force", "--bound", "4"], ["verdict"],
            ["verdict", "--assume", "P", "--assume", "ideal_sf", "--assume", "quotient_sf"], ["invariants"]]
    if "invariant_subset" in model:
        cmds.append(["ideal"])
    if model["model_type"] == "finite_map":
        cmds += [["coboundary"], ["coboundary", "--k-bound", "1"]]
    return cmds


def main():
    drk, samples, schema_path = sys.argv[1], Path(sys.argv[2]), Path(sys.argv[3])
    schema = json.loads(schema_path.read_text())
    try:
        import jsonschema
        validator = jsonschema.Draft202012Validator(schema)
        validator.check_schema(schema)
    except ImportError:
        validator = None
        print("jsonschema not installed: skipping schema validation")

    failures = []
    checked = 0
    for sample in sorted(samples.glob("*.json")):
        raw = sample.read_bytes()
        model = json.loads(raw)
        for cmd in commands_for(model):
            args = [*cmd, str(sample), "--format", "machine"]
            label = f"{sample.name}: {' '.join(cmd)}"
            try:
                first = run(drk, args)
                if run(drk, args) != first:
                    raise AssertionError("output differs between identical runs")
                if "--brute-force" in cmd:
                    for t in ("1", "2", "8"):
                        if run(drk, [*args, "--threads", t]) != first:
                            raise AssertionError(f"output differs with --threads {t}")
                doc = json.loads(first)
                if doc["input"]["sha256"] != hashlib.sha256(raw).hexdigest():
                    raise AssertionError("input.sha256 does not match the file")
                if doc["command"] != cmd[0]:
                    raise AssertionError(f"command field is {doc['command']!r}")
                if validator is not None:
                    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
                    if errors:
                        e = errors[0]
                        raise AssertionError(f"schema: /{'/'.join(map(str, e.path))}: {e.message}")
                checked += 1
            except AssertionError as e:
                failures.append(f"{label}: {e}")

    with tempfile.TemporaryDirectory() as tmp:
        bad = {
            "syntax.json": '{"model_type": "raw_matrices",\n "m1": [[2]],\n "m2": [[3]],,}',
            "shape.json": '{"model_type": "raw_matrices", "m1": [[2, 0]], "m2": [[3]]}',
            "noncommuting.json": '{"model_type": "raw_matrices", "m1": [[1,1],[0,1]], "m2": [[1,0],[1,1]]}',
            "not_invariant.json": '{"model_type": "finite_map", "t1": [1, 0], "t2": [0, 1], "invariant_subset": ["x0"]}',
            "unknown_key.json": '{"model_type": "two_graph", "a1": [[3]], "a2": [[5]], "extra": 1}',
        }
        for name, text in bad.items():
            path = Path(tmp) / name
            path.write_text(text)
            try:
                run(drk, ["k0", str(path), "--format", "machine"], expect=1)
                checked += 1
            except AssertionError as e:
                failures.append(f"{name}: {e}")

    for f in failures:
        print("FAIL", f)
    print(f"{checked} checks, {len(failures)} failure(s)")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
