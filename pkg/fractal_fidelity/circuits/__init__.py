"""Gate-level simulation of the sawtooth map under static imperfections"""
