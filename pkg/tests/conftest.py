import pytest

from hypoly.eqclass import parse_class_spec

# two parameter sets per sigma kind
GRID = [
    "one:-2:0", "one:-1:1",
    "s:-1:1", "s:-2:3",
    "1-s2:-2:0", "1-s2:-3:1",
    "s2-1:-2:3", "s2-1:-1:2",
    "s2:-7:1", "s2:-9:2",
    "s2+1:-4:0", "s2+1:-4:1",
]
CLASSES = [parse_class_spec(s) for s in GRID]


@pytest.fixture(params=CLASSES, ids=GRID)
def eq(request):
    return request.param


def cls(spec: str):
    return parse_class_spec(spec)
