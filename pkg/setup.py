from setuptools import find_packages, setup

setup(
    name="kostka_semigroup",
    version="0.1.0",
    packages=find_packages(exclude=["tests"]),
    py_modules=["app"],
    install_requires=["numpy", "sympy", "networkx", "python-dotenv"],
    entry_points={"console_scripts": ["kostka=app:main"]},
)
