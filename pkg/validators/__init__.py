"""
Валидаторы входных данных
"""
