"""Exact quantum sawtooth map and its classical counterpart"""
