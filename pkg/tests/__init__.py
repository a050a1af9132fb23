# Test package (mirrors src/psmod/). Lives outside the importable package on purpose,
# so tests and fixtures are never packaged into the wheel.
