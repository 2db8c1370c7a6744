"""Shared test vectors for clients that mirror the command-tile cycling.

The browser UI re-implements color cycling locally (everything else goes
through the HTTP API); these fixtures pin its behavior to the core model.
Regenerate with ``python -m tilemech.fixtures <path>``.
"""

from __future__ import annotations

import json
import sys

from .model import COLOR_HEX, COLOR_NAMES, CycleAction, KIND_ORDER, Kind, allowed_colors, cycle_color


def cycling_fixture() -> dict:
    kinds = [
        {
            "name": kind.name,
            "family": kind.family,
            "variation": kind.variation,
            "allowed": list(allowed_colors(kind)),
        }
        for kind in KIND_ORDER
    ]
    cases = []
    for kind in KIND_ORDER:
        for current in allowed_colors(kind):
            for action in CycleAction:
                cases.append(
                    {
                        "kind": kind.name,
                        "current": current,
                        "action": action.value,
                        "expected": cycle_color(allowed_colors(kind), current, action),
                    }
                )
    return {
        "palette": {str(i): COLOR_HEX[i] for i in range(1, 10)},
        "color_names": {str(i): COLOR_NAMES[i] for i in range(1, 10)},
        "kind_order": [kind.name for kind in KIND_ORDER],
        "kinds": kinds,
        "cases": cases,
    }


def write_fixture(path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(cycling_fixture(), fh, indent=2)
        fh.write("\n")


if __name__ == "__main__":
    write_fixture(sys.argv[1] if len(sys.argv) > 1 else "cycling.json")
