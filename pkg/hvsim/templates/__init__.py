"""
Templates package containing Jinja2 templates for rendering scenario reports.
"""
