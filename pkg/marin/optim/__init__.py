"""
Set of optimization functions for MARIN
"""

if __name__ == "__main__":

    pass
