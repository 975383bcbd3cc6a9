"""
Using the command line tool
===========================

Write an instance, solve it with the exact oracle alongside, and read the
key=value report.
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

tmp = Path(tempfile.mkdtemp())
instance = {
    "k": 2,
    "objective": "supplier",
    "points": [[0], [1], [2], [3], [4]],
    "groups": [[0, 1], [3, 4]],
    "requirements": [1, 1],
}
path = tmp / "line.json"
path.write_text(json.dumps(instance))

cli = [sys.executable, "-m", "divclust"]
out = subprocess.run(cli + ["--instance", str(path), "--exact"], capture_output=True, text=True)
print(out.stdout)

# a generated instance, solved as k-median
gen = tmp / "random.json"
subprocess.run(cli + ["generate", "--kind", "euclidean-random", "--param", "n_points=12",
                      "--param", "k=3", "--seed", "4", "--out", str(gen)], check=True)
out = subprocess.run(cli + ["--instance", str(gen), "--exact", "--grid", "exact"],
                     capture_output=True, text=True)
report = dict(line.split("=", 1) for line in out.stdout.splitlines())
print("cost", report["cost"], "opt", report["opt"], "ratio", report["ratio"])

# requirements no solution can meet give exit code 3
instance["requirements"] = [2, 2]
path.write_text(json.dumps(instance))
print("exit code:", subprocess.run(cli + ["--instance", str(path)], capture_output=True).returncode)
