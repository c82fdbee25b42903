"""Command-line front end: one module per subcommand"""
from smti.cli import bench, check, encode, generate, solve

COMMANDS = (generate, solve, check, encode, bench)
