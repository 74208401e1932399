import { cliMain } from "./figures.js";

process.exit(cliMain("5", process.argv.slice(2)));
