from ryser.cli import main

main()
