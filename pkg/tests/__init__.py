"""
Set of standardized tests for MARIN
"""


if __name__ == "__main__":

    pass
