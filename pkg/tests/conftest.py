# Makes tests/ importable so the shared oracles module can be used directly.
