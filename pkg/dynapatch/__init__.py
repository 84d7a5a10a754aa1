# -*- coding: utf-8 -*-

"""
Desk-scale laboratory for dynamic adversarial patches: a miniature grid
detector, a synthetic scene renderer, a differentiable patch placement
pipeline and the view-angle dependent patch optimization built on top.
"""

__license__ = 'MIT license, see LICENSE.txt file.'
__version__ = '0.1.0'
