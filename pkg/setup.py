from setuptools import setup, find_packages


version_ns = {}
with open('sharpsens/_version.py') as f:
    exec(f.read(), version_ns)


setup(
      name='sharpsens',
      version=version_ns['get_versions']()['version'],
      description="Sharp bounds on causal effects under generalized marginal "
                  "sensitivity models",
      author='The SharpSens Development Team',
      packages=find_packages(exclude=['docs']),
      install_requires=['numpy>=1.10',
                        'scipy>=0.16',
                        'menpo>=0.6',
                        'scikit-learn>=0.17',
                        'pandas>=0.17',
                        'joblib>=0.9'],
      tests_require=['pytest'],
      entry_points={
          'console_scripts': ['sharpsens = sharpsens.cli.main:main']}
)
