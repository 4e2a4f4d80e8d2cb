"""Exception types shared across the package.

DataError marks bad input (malformed CSV, non-monotone timestamps) and maps
to CLI exit code 2; InvariantError marks a broken internal guarantee and
maps to exit code 3.
"""


class DataError(Exception):
    pass


class InvariantError(Exception):
    pass
