#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""c01 module docstring."""

import os  # c02 trailing import comment

A = "# TRAP1 not a comment"
B = '# TRAP2 single quoted'
C = "escaped \" # TRAP3 still string"
D = r"raw \" # TRAP4 raw string"
E = f"{A!r} # TRAP5 f-string"
F = """
# TRAP6 inside triple quoted string, not a docstring
"""
G = f"{'#'} TRAP7 nested quote"


# c03 comment before class
class Widget:
    """c04 class docstring

    spanning lines.
    """

    # c05 comment in class body
    def method(self, x: int) -> str:
        """c06 method docstring"""
        y = x // 2  # c07 floor division is not a comment marker
        s = """TRAP8 expression string, not a docstring"""
        return str(y) + s  #c08 tight

    async def run(self):
        '''c09 async docstring in single quotes'''
        ## c10 double hash
        return None


def one_liner(): """c11 same-line docstring"""


def decorated(
    a,  # c12 inside parameters
    b=(1, 2),
) -> dict:
    # c13 comment before docstring
    """c14 docstring after a comment"""
    return {"k": "# TRAP9"}  # c15 after dict


def no_doc():
    x = 1
    """TRAP10 not a docstring, not first statement"""
    return x


lambda_ = lambda: "# TRAP11"  # c16 after lambda
# c17 line continuation next
total = 1 + \
    2  # c18 after continuation
data = [
    "# TRAP12",  # c19 inside list
]
# c20 final comment
class Empty: pass  # c21 class without docstring
