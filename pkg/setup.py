from setuptools import setup, find_packages

setup(
    name="py-kato",
    version="0.1.0",
    packages=find_packages(exclude=["tests"]),
    install_requires=["numpy", "sympy", "pandas", "tqdm"],
    entry_points={"console_scripts": ["kato=kato.cli:main"]},
)
