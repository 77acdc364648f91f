"""Regenerate the golden CSV artifacts for the CLI regression tests.

Run from the repository root:  python3 tests/make_golden.py
"""
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).parents[1] / "src"))

from eislab.cli import run  # noqa: E402
from test_cli import GOLDEN_CASES  # noqa: E402

golden = pathlib.Path(__file__).parent / "golden"
golden.mkdir(exist_ok=True)

for name, argv in sorted(GOLDEN_CASES.items()):
    out = golden / name
    rc = run(argv + ["--out", str(out)])
    print(f"{name}: exit {rc}")
    assert rc == 0

# the lift-scan manifest is a side artifact, not a golden fixture
stray = golden / "lift-scan.csv.manifest.json"
if stray.exists():
    stray.unlink()
