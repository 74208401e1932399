import { cliMain } from "./figures.js";

process.exit(cliMain("2", process.argv.slice(2)));
