"""oracle tests"""
