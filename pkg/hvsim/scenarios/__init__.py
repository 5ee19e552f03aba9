"""
Scenarios package.

This package contains the canned scenarios that verify each claim of the
toolkit, the factory that creates them by name and the runner that turns a
ScenarioConfig into a ScenarioReport.
"""
