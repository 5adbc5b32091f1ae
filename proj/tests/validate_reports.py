# Copyright 2026 The pseudosep Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Runs the CLI and validates every JSON report against report.schema.json."""

import argparse
import json
import os
import subprocess
import sys
import tempfile

import jsonschema


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--cli", required=True)
    parser.add_argument("--schema", required=True)
    args = parser.parse_args()

    with open(args.schema) as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)

    tmp = tempfile.mkdtemp()
    circuit = os.path.join(tmp, "ghz.circ")
    with open(circuit, "w") as f:
        f.write("# three-qubit GHZ\nH 0\nCNOT 0 1\nCNOT 1 2\nT 2\n")
    empty = os.path.join(tmp, "empty.circ")
    open(empty, "w").close()
    long_h = os.path.join(tmp, "long.circ")
    with open(long_h, "w") as f:
        f.write("H 0\n" * 40)

    cases = [
        (["verify"], 0),
        (["verify", "--tolerance", "1e-30"], 1),
        (["simulate", "H", "--seed", "1"], 0),
        (["simulate", "CNOT", "--state", "random", "--seed", "7"], 0),
        (["simulate", "X", "--prep", "direct", "--state", "plus"], 0),
        (["simulate", "H", "--seed", "1", "--max-trials", "1"], 1),
        (["stats", "T", "--trials", "200", "--seed", "3"], 0),
        (["stats", "CNOT", "--trials", "1"], 0),
        (["run", circuit, "--seed", "5"], 0),
        (["run", empty], 0),
        (["run", long_h, "--max-trials", "1"], 1),
    ]
    failures = 0
    for argv, want in cases:
        cmd = [args.cli] + argv + ["--json"]
        proc = subprocess.run(cmd, capture_output=True, text=True)
        label = " ".join(argv)
        if proc.returncode != want:
            print(f"FAIL {label}: exit {proc.returncode}, expected {want}\n{proc.stderr}")
            failures += 1
            continue
        errors = sorted(validator.iter_errors(json.loads(proc.stdout)), key=str)
        if errors:
            print(f"FAIL {label}: {errors[0].message}")
            failures += 1
            continue
        again = subprocess.run(cmd, capture_output=True, text=True)
        if again.stdout != proc.stdout:
            print(f"FAIL {label}: output differs between identical runs")
            failures += 1
            continue
        print(f"ok   {label}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
