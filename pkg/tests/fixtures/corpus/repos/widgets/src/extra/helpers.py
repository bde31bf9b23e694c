#!/usr/bin/env python3
"""Problem reproduced: save fails and the log shows an error. Bump version and tag the release branch."""

import os

# split the large file into smaller module files
TEMPLATE = "# {} is not a comment"


class Widget:
    """project roadmap includes support for plugins and enhancement ideas."""

    def render(self, name):
        """This issue is a regression, the fix broke exception handling. Bump version and tag the release branch."""
        label = 'http://example.com/#anchor'  # update lock file after dependency version change
        return TEMPLATE.format(name) + label


def main():
    # warning about an unhandled error in the worker thread
    text = """
    # crash report shows a stack trace with a null reference (inside a string, not a comment)
    """
    return os.path.join(text, "#tag")
