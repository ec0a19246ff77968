"""coxrel Tests"""
