"""Documented CLI invocations with frozen outputs under tests/golden/.

Run ``python tests/cli_cases.py`` to rewrite the golden files.
"""

import contextlib
import hashlib
import io
import os
import sys
from pathlib import Path

from charex.cli import main

GOLDEN_DIR = Path(__file__).parent / "golden"

# name -> (argv, expected exit code, store a sha256 digest instead of the text)
CASES = {
    "theta_exp": ("theta --mu 1,2 --family exp --format json", 0, False),
    "theta_laplace": ("theta --mu 1,2 --family laplace --format json", 0, False),
    "theta_duplicate": ("theta --mu 1,1 --family exp --format json", 2, False),
    "check_pass_up_to": ("check --mu 2,-1 --m-max 20 --format json", 0, False),
    "check_fail": ("check --mu 1,-1 --format json", 0, False),
    "check_proven": ("check --mu 1,2,3 --format json", 0, False),
    "lemma1_exp": ("lemma1 --mu 1,2,3 --m-max 6 --format json", 0, False),
    "lemma1_laplace": ("lemma1 --mu 1,2 --family laplace --m-max 6 --format json", 0, False),
    "moments_exp": ("moments --mu 1,2 --family exp --seed-moment 1=1 --m-max 6 --format json", 0, False),
    "moments_laplace": (
        "moments --mu 1,2 --family laplace --seed-moment 1=0 --seed-moment 2=2 --m-max 8 --format json", 0, False),
    "moments_inconsistent": (
        "moments --mu 1,2 --family laplace --seed-moment 1=1 --m-max 4 --format json", 3, False),
    "verify_cf_exp": ("verify-cf --model exp:1 --mu 1,2 --family exp --format json", 0, False),
    "verify_cf_symmetric": ("verify-cf --model bernoulli:3 --equation symmetric --format json", 0, False),
    "pdf_mixed": ("pdf --mu 1,-2,3 --lambda 1.5 --grid -5:5:11 --format json", 0, False),
    "sample_text": ("sample --mu 1,-2,3 --lambda 2 --n-samples 150000 --seed 4", 0, True),
    "renyi": ("renyi --sample-size 3 --rank 1 --lambda 2 --n-samples 150000 --seed 4 --format json", 0, False),
}


def run_cli(argv: str, threads: int | None = None) -> tuple[int, str]:
    saved = os.environ.get("CHAREX_THREADS")
    if threads is not None:
        os.environ["CHAREX_THREADS"] = str(threads)
    out, err = io.StringIO(), io.StringIO()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            try:
                code = main(argv.split())
            except SystemExit as exc:
                code = exc.code
    finally:
        if saved is None:
            os.environ.pop("CHAREX_THREADS", None)
        else:
            os.environ["CHAREX_THREADS"] = saved
    return code, out.getvalue()


def rendered(name: str, threads: int | None = None) -> tuple[int, str]:
    argv, _, digest = CASES[name]
    code, text = run_cli(argv, threads)
    if digest:
        text = "sha256:" + hashlib.sha256(text.encode()).hexdigest() + "\n"
    return code, text


def golden_path(name: str) -> Path:
    return GOLDEN_DIR / f"{name}.out"


if __name__ == "__main__":
    GOLDEN_DIR.mkdir(exist_ok=True)
    for case in CASES:
        code, text = rendered(case, threads=1)
        if code != CASES[case][1]:
            sys.exit(f"{case}: exit {code}, expected {CASES[case][1]}")
        golden_path(case).write_text(text)
        print(f"wrote {golden_path(case)}")
