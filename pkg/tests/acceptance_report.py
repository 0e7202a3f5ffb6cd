"""Collects one summary line per acceptance criterion for the terminal report."""

LINES = {}


def record(number, title, passed, detail):
    line = f"criterion {number:>2} {'PASS' if passed else 'FAIL'}  {title}: {detail}"
    LINES[number] = line
    print(line)
    return passed
