import { cliMain } from "./figures.js";

process.exit(cliMain("3", process.argv.slice(2)));
