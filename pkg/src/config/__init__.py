"""Configuration package for the toolkit"""
