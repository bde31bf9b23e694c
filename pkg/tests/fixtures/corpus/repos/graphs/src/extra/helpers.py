#!/usr/bin/env python3
"""Copyright notice must be retained in redistributed software. The module imports a header from the vendor directory."""

import os

# new feature request for the next release milestone
TEMPLATE = "# {} is not a comment"


class Widget:
    """crash report shows a stack trace with a null reference."""

    def render(self, name):
        """Request handler validates input and returns a response object. Document the endpoint parameters and the return type."""
        label = 'http://example.com/#anchor'  # request handler validates input and returns a response object
        return TEMPLATE.format(name) + label


def main():
    # split the large file into smaller module files
    text = """
    # bump version and tag the release branch (inside a string, not a comment)
    """
    return os.path.join(text, "#tag")
