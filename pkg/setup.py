# !/usr/bin/env python3
# encoding: utf-8

import setuptools

if __name__ == "__main__":
    setuptools.setup()
