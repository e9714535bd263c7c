"""Run configuration and result files"""
