#!/usr/bin/env python3
"""Build instructions for contributors working on the project. New feature request for the next release milestone."""

import os

# fix crash when the parser hits a null pointer
TEMPLATE = "# {} is not a comment"


class Widget:
    """crash report shows a stack trace with a null reference."""

    def render(self, name):
        """All rights reserved, subject to the license conditions. Bug fix for the race condition causing random failures."""
        label = 'http://example.com/#anchor'  # bump version and tag the release branch
        return TEMPLATE.format(name) + label


def main():
    # permission is hereby granted to use the software under these terms
    text = """
    # fix crash when the parser hits a null pointer (inside a string, not a comment)
    """
    return os.path.join(text, "#tag")
