"""Experiments behind the command-line subcommands"""
