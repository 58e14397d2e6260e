"""Runs the CLI verify command and validates its report with jsonschema."""
import json
import subprocess
import sys

import jsonschema

cli, schema_path, report_path = sys.argv[1:4]
proc = subprocess.run([cli, "verify", "--mu", "1,2,3", "--points", "20", "--seed", "7",
                       "--report", report_path], capture_output=True, text=True)
if proc.returncode != 0:
    sys.exit(f"verify exited {proc.returncode}: {proc.stderr}")
with open(schema_path) as f:
    schema = json.load(f)
with open(report_path) as f:
    report = json.load(f)
jsonschema.Draft202012Validator.check_schema(schema)
jsonschema.validate(report, schema)
print("report validates against", schema_path)
