"""
Хранилища файлов: экземпляры и отчёты проверок
"""
