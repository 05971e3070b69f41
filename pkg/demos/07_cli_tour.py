"""The command-line interface, driven in-process.

The same commands run from a shell as ``kemeny-stats ...`` or
``python -m kemeny_stats ...``.
"""
# %%
from kemeny_stats.cli import run_cli

commands = [
    ["corr", "--data", "sleep", "--format", "csv"],
    ["test", "two-sample", "--data", "sleep", "--method", "tau"],
    ["test", "two-sample", "--method", "tau", "--variant", "equation-literal", "--format", "csv"],
    ["oracle", "--n", "2"],
    ["simulate", "--n", "10", "--replicates", "1100", "--seed", "7", "--format", "csv"],
    ["bootstrap", "--replicates", "500", "--seed", "7", "--format", "csv"],
]
for argv in commands:
    print("$ kemeny-stats", " ".join(argv))
    code = run_cli(argv)
    print(f"(exit {code})\n")
