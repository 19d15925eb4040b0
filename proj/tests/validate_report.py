"""Validates a bt JSON report against docs/report.schema.json."""
import json
import sys

import jsonschema

schema_path, report_path = sys.argv[1], sys.argv[2]
with open(schema_path) as fh:
    schema = json.load(fh)
with open(report_path) as fh:
    report = json.load(fh)
jsonschema.validate(report, schema)
for suite in report["suites"]:
    for w in suite["witnesses"]:
        if "point" in w:
            jsonschema.validate(w, schema["$defs"]["witness"] | {"$defs": schema["$defs"]})
print("schema ok")
