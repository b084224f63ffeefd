from setuptools import setup, find_packages

setup(
    name="fock_duality",
    version="1.0.0",
    packages=find_packages(exclude=["examples", "examples.*"]),
    install_requires=[
        "sympy>=1.12",
    ],
    extras_require={
        "test": ["pytest>=7.0.0", "hypothesis>=6.0"],
    },
    entry_points={
        "console_scripts": [
            "fock_duality=fock_duality.main:main",
        ],
    },
    author="Fock Duality Project",
    description="Exact checks of dual pairs of Lie algebras acting on fermionic Fock space",
    keywords="fock space, dual pairs, howe duality, young diagrams, quasispin",
    python_requires=">=3.10",
)
