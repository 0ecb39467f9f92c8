import os
from typing import Any


def positive_int(value: Any, default: int) -> int:
    """Parses positive integers."""

    try:
        value = int(value)
    except (ValueError, TypeError):
        return default

    return value if value > 0 else default


class Config:
    DELTA_BUDGET = \
        positive_int(os.environ.get('DELTA_BUDGET'),
                     default=1 << 16)

    SPOT_CHECK_SAMPLES = \
        positive_int(os.environ.get('SPOT_CHECK_SAMPLES'),
                     default=32)
    SPOT_CHECK_SEED = \
        positive_int(os.environ.get('SPOT_CHECK_SEED'),
                     default=0)

    NAT_MODULARITY_CEILING = \
        positive_int(os.environ.get('NAT_MODULARITY_CEILING'),
                     default=48)

    MAX_LATTICE_SIZE = \
        positive_int(os.environ.get('MAX_LATTICE_SIZE'),
                     default=512)
    ZN_LIMIT = \
        positive_int(os.environ.get('ZN_LIMIT'),
                     default=5000)

    NAT_GENERATOR_LIMIT = \
        positive_int(os.environ.get('NAT_GENERATOR_LIMIT'),
                     default=100)
    NAT_DELTA_LIMIT = \
        positive_int(os.environ.get('NAT_DELTA_LIMIT'),
                     default=40)
