"""
The mld-lab command line
========================

Every computation is also reachable from the shell, with exact
rationals as "p/q" strings.  Here the commands are run in-process.
"""

import tempfile
from pathlib import Path

from mld_lab.cli import main

commands = [
    ["mld", "--v1", "1,0", "--v2", "1,2"],
    ["mld", "--v1", "3,-1", "--v2", "0,1", "--b1", "1/3", "--oracle", "--kth", "3"],
    ["mld", "--v1", "1,0", "--v2", "0,1", "--b1", "1", "--b2", "1", "--require-klt"],
    ["resolve", "--v1", "1,0", "--v2", "2,5"],
    ["solve", "--shape", "circle", "--weights", "2,2,2", "--c1", "1/2", "--crosscheck"],
    ["mld", "--v1", "1,0", "--v2", "1,2", "--b1", "1/0"],
]
for argv in commands:
    print("$ mld-lab", " ".join(argv))
    print("exit", main(argv))

with tempfile.TemporaryDirectory() as tmp:
    base = Path(tmp) / "scan"
    print("exit", main(["scan", "--family", "0", "--N", "2", "--schedule", "10,20", "--output", str(base)]))
    print(base.with_suffix(".csv").read_text())
