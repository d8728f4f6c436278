import init, { catalog_json, validate, solve_sl2, contract } from "./pkg/order3_web.js";

const $ = (id) => document.getElementById(id);

function show(id, f) {
  const out = $(id);
  try {
    out.className = "";
    out.textContent = JSON.stringify(JSON.parse(f()), null, 2);
  } catch (e) {
    out.className = "err";
    out.textContent = String(e);
  }
}

await init();

const names = JSON.parse(catalog_json());
for (const sel of [$("v-name"), $("c-name")]) {
  for (const { name, about } of names) {
    const o = document.createElement("option");
    o.value = name;
    o.textContent = name;
    o.title = about;
    sel.appendChild(o);
  }
}
$("c-name").value = "so23_order3";

$("v-run").onclick = () => show("v-out", () => validate($("v-name").value, $("v-params").value));
$("s-run").onclick = () => show("s-out", () => solve_sl2($("s-rep").value));
$("c-run").onclick = () => show("c-out", () => contract($("c-name").value, "", $("c-exps").value));
