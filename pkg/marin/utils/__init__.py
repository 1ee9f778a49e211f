"""
Set of auxiliary functions for MARIN
"""

if __name__ == "__main__":

    pass
