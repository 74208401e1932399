import { cliMain } from "./figures.js";

process.exit(cliMain("4", process.argv.slice(2)));
