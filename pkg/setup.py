from setuptools import setup, find_packages

setup(
    name="loop_spinor_engine",
    version="0.1",
    packages=find_packages(exclude=["tests", "examples", "examples.*"]),
    install_requires=[
        "fastapi>=0.115.12",
        "uvicorn>=0.30.0",
        "numpy>=1.22.3",
        "scipy>=1.10.0",
        "pandas>=1.4.2",
        "pydantic>=2.11.7",
        "pydantic-settings>=2.1.0",
        "python-dotenv>=1.1.0",
    ],
    entry_points={"console_scripts": ["loopspin = app.cli:main"]},
)
