"""phipsi tests"""
