"""
Scenario files and reports
==========================

Scenarios are self-contained JSON documents listing algebras, measure
spaces, maps, operators, symbols and tasks.  ``cbiframe validate`` checks
their structure without numerics; ``cbiframe run`` executes the tasks and
emits a deterministic JSON report.
"""

import json
import tempfile
from importlib import resources
from pathlib import Path

from cbiframe.cli import main

src = resources.files("cbiframe").joinpath("scenarios", "worked_example.json")
doc = json.loads(src.read_text())
print("tasks:", [t["task"] for t in doc["tasks"]])

with tempfile.TemporaryDirectory() as tmp:
    tmp = Path(tmp)
    scenario = tmp / "scenario.json"
    scenario.write_text(json.dumps(doc))
    print("validate exit code:", main(["validate", str(scenario)]))

    report = tmp / "report.json"
    code = main(["run", str(scenario), "--report", str(report)])
    summary = json.loads(report.read_text())["summary"]
    print("run exit code:", code, summary)

    # Overlapping panels are rejected with a single diagnostic.
    doc["spaces"]["I"]["panels"] = [[0, 0.6], [0.5, 1]]
    for m in ("X", "Y"):
        doc["maps"][m]["entries"] = doc["maps"][m]["entries"] * 2
    scenario.write_text(json.dumps(doc))
    print("validate exit code for overlapping panels:", main(["validate", str(scenario)]))
