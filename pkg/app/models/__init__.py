# Report models package
