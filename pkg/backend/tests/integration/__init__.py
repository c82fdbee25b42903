"""
Integration Tests through the smti CLI and benchmark harness
"""
