"""
Laboratoire anti-brouillage à saut de fréquence
"""
from app.app import create_app

__all__ = ['create_app']
