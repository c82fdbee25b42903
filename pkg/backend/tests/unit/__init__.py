"""
Unit Tests for the SMTI models, services and encoders
"""
