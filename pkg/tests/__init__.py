"""
Тесты набора инструментов lune-kit
"""
