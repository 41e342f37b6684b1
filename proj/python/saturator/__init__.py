# Copyright (c) Saturator contributors.
# SPDX-License-Identifier: Apache-2.0
"""Decision procedures for Presburger arithmetic, ordered groups and real closed fields."""

import json

from ._core import Error, decide, qe, run, tree_check

__all__ = ["Error", "cli", "decide", "qe", "run", "tree_check"]


def cli(*args):
    """Runs a CLI command and returns (exit_code, parsed JSON or None)."""
    code, out, _ = run([str(a) for a in args])
    return code, (json.loads(out) if out.strip() else None)
