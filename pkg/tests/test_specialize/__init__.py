"""specialize tests"""
