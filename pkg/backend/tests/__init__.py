"""
SMTI Solver Test Suite
"""
