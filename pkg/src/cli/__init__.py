"""
Command-line layer: request/report models, sweep runner and the click commands.
"""
