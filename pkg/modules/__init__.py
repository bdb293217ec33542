"""
Modules Package - Trường GF, thiết kế SNC, codec, kênh xoá, giải tích, mô phỏng và CLI
"""
