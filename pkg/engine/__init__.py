"""
Вычислительное ядро набора инструментов
Алгебра многочленов, геометрия лунки и исполняемые проверки теорем
"""
